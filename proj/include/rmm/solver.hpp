// Stage-wise rank-maximal matching solver.
//
// Stage i adds the rank-i edges to the working graph, augments the previous
// stage's matching to maximum, classifies vertices even/odd/unreachable, and
// prunes edges that no rank-maximal matching can use: edges of rank > i at
// vertices that stopped being even, and edges joining odd vertices to odd or
// unreachable vertices. The solver records, per vertex, the first stage at
// which it stopped being even and, per edge, the stage and cause of its
// deletion; any stage's reduced graph can be reconstructed from the records.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rmm/graph.hpp"
#include "rmm/instance.hpp"

namespace rmm {

enum class DeleteCause : std::uint8_t {
  none,
  // edge of rank > i incident to a vertex that became odd or unreachable at
  // stage i
  higher_rank,
  // edge of the stage graph joining an odd vertex to an odd or unreachable
  // vertex
  odd_prune,
  // odd-to-unreachable sweep after the last stage
  final_cleanup,
};

const char* delete_cause_name(DeleteCause c);

struct VertexStageRecord {
  int became_at = k_no_stage;      // first stage the vertex was not even
  Label kind = Label::even;        // odd or unreachable at that stage
  friend bool operator==(const VertexStageRecord&,
                         const VertexStageRecord&) = default;
};

struct EdgeStageRecord {
  int deleted_at = k_no_stage;
  DeleteCause cause = DeleteCause::none;
  friend bool operator==(const EdgeStageRecord&,
                         const EdgeStageRecord&) = default;
};

// Everything needed to rebuild any stage's reduced graph in O(m + n), plus
// the per-stage matched counts.
struct PreprocessStore {
  std::vector<VertexStageRecord> vertex_records;  // by vertex handle
  std::vector<EdgeStageRecord> edge_records;      // by edge slot
  std::vector<int> stage_counts;  // applicants matched at rank i, 1-based stages
  int final_r = 0;

  Signature prefix_signature(int stage) const;
  friend bool operator==(const PreprocessStore&,
                         const PreprocessStore&) = default;
};

struct SolveResult {
  Matching matching;
  Signature signature;
  PreprocessStore store;
};

// Per-stage state handed to an observer after the stage's pruning: the
// reduced graph's edge slots, the labels, and the matching so far.
struct StageSnapshot {
  int stage = 0;
  std::vector<int> graph_edges;
  std::vector<Label> labels;
  MateVector mate;
};

struct SolveOptions {
  std::function<void(const StageSnapshot&)> observer;
  // Flips every deterministic scan order; the matching may differ but the
  // signature, labels and reduced graphs may not.
  bool reverse_scan = false;
};

SolveResult solve(const Instance& inst, const SolveOptions& opt = {});

// The matching restricted to edges of rank <= stage: a maximum matching of
// the stage-`stage` reduced graph whose per-rank counts equal the store's
// prefix. stage runs over [0, store.final_r].
Matching stage_matching(const Instance& inst, const SolveResult& result,
                        int stage);

// Edge slots of the stage-i reduced graph: rank <= stage and not deleted at
// or before it. stage runs over [0, store.final_r].
std::vector<int> reconstruct_reduced_graph(const Instance& inst,
                                           const PreprocessStore& store,
                                           int stage);

// Text form, stable across runs:
//   R <final_r>
//   C <count_1> ... <count_final_r>
//   V <name> <stage> <odd|unreachable>        (only vertices with a record)
//   E <applicant> <post> <rank> <stage> <higher_rank|odd_prune|final_cleanup>
std::string serialize_store(const Instance& inst, const PreprocessStore& store);
PreprocessStore parse_store(const Instance& inst, std::string_view text);

}  // namespace rmm
