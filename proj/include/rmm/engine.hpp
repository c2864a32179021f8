// Maintains a rank-maximal matching and its preprocessing records across
// vertex and edge insertions and deletions.
//
// An update re-runs the stage loop only from the smallest rank the touched
// vertex carries; earlier stages keep their records verbatim. Within the
// re-run, each stage's edge set is derived from the current records (so edges
// the old run had pruned re-enter on their own when no rule prunes them
// again), the stage matching is seeded from the previous stage plus the old
// matching's still-compatible pairs of that rank, and at most one augmenting
// path per stage can occur, which the engine asserts.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rmm/instance.hpp"
#include "rmm/solver.hpp"

namespace rmm {

// Bookkeeping the update loop maintains across stages: vertices that are even
// again although the previous run had them odd or unreachable (their
// higher-rank edges may re-enter), and vertices settled odd or unreachable in
// this run (nothing may re-enter on them). The two sets stay disjoint.
struct UpdateScratch {
  std::set<int> reeligible;  // S
  std::set<int> settled;     // T
};

struct UpdateReport {
  Signature old_signature;
  Signature new_signature;
  int stages_touched = 0;
  int augmentations = 0;
  // Record movement against the state before the update, over edges that
  // survive it: deleted means pruned at an earlier stage than before (or a
  // new edge pruned at all), restored means pruned later or not at all. A
  // composed edge update reports the sums over its two halves.
  int edges_deleted = 0;
  int edges_restored = 0;
};

struct NeighborSpec {
  std::string name;
  int rank = 0;
};

class Engine {
 public:
  // Solves the instance and keeps it for updating.
  explicit Engine(Instance inst);
  // Adopts a caller-chosen matching instead of the solver's; it must be valid
  // and carry the optimal signature.
  Engine(Instance inst, Matching adopt);

  const Instance& instance() const { return inst_; }
  const Matching& matching() const { return cur_.matching; }
  const Signature& signature() const { return cur_.signature; }
  const PreprocessStore& store() const { return cur_.store; }

  // Labels of the final reduced graph with respect to the current matching.
  std::vector<Label> final_labels() const;

  const UpdateScratch& last_scratch() const { return scratch_; }
  // Largest per-stage augmentation count any update has seen (never above 1).
  int max_stage_augmentations() const { return max_stage_augmentations_; }

  // Vertex updates. The new vertex's name must be unused, its neighbors must
  // be alive vertices of the other side. Deleting a vertex drops its edges.
  UpdateReport add_vertex(const std::string& name, Side side,
                          const std::vector<NeighborSpec>& neighbors);
  UpdateReport delete_vertex(const std::string& name);

  // Edge updates. Each one runs as a vertex update pair: detach every edge
  // at the applicant, settle that state, then attach the modified edge set.
  // A single-stage direct rewrite cannot work here, because deleting one
  // matched edge can shrink an early stage while a later stage grows, which
  // would force two augmentations into the same stage.
  UpdateReport add_edge(const std::string& applicant, const std::string& post,
                        int rank);
  UpdateReport delete_edge(const std::string& applicant,
                           const std::string& post);

 private:
  UpdateReport run_update(int affected_from, const std::vector<int>& new_edges);
  // Shared body of the edge updates: drops every edge at applicant a (the
  // one to post drop_post for good, if given), then re-attaches the kept
  // list plus extra, running one update per leg. The vertex slot survives.
  UpdateReport splice_applicant_edges(int a, int drop_post,
                                      std::optional<std::pair<int, int>> extra);

  Instance inst_;
  SolveResult cur_;
  UpdateScratch scratch_;
  int max_stage_augmentations_ = 0;
};

// One update per line:
//   addv <name> <A|P> : <neighbor>:<rank>(,<neighbor>:<rank>)*
//   delv <name>
//   adde <applicant> <post> <rank>
//   dele <applicant> <post>
// '#' starts a comment, blank lines are skipped.
struct Operation {
  enum class Kind { add_vertex, delete_vertex, add_edge, delete_edge };
  Kind kind = Kind::add_vertex;
  std::string name;  // the vertex for addv/delv, the applicant for adde/dele
  Side side = Side::applicant;          // addv only
  std::vector<NeighborSpec> neighbors;  // addv only
  std::string post;                     // adde/dele only
  int rank = 0;                         // adde only

  std::string to_string() const;
};

std::vector<Operation> parse_op_log(std::string_view text);

UpdateReport apply(Engine& engine, const Operation& op);

}  // namespace rmm
