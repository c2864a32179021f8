// Shared driver state for the stage loop. The static solver runs it from an
// empty matching; the dynamic engine preloads records, graph and matching for
// the stages it keeps and runs only the affected suffix.
#pragma once

#include <vector>

#include "rmm/graph.hpp"
#include "rmm/instance.hpp"
#include "rmm/solver.hpp"

namespace rmm::detail {

struct StageRun {
  const Instance* inst = nullptr;
  int max_rank = 0;
  StageGraph g;
  MateVector mate;
  std::vector<Label> labels;
  PreprocessStore rec;
  std::vector<std::vector<int>> rank_buckets;  // rank -> alive edge slots

  // Sizes every array for the instance and leaves the graph empty.
  void init(const Instance& inst, bool reverse_scan);

  // Alive edges of this rank not deleted by the current records, ascending.
  std::vector<int> pending_stage_edges(int stage) const;

  void insert_edges(const std::vector<int>& edge_slots);
  int augment_to_maximum();
  void classify_now();

  // Records label transitions, prunes higher-rank and odd-incident edges,
  // and tallies the stage's matched count (asserting the earlier counts did
  // not move). Requires labels from classify_now on the current state.
  void apply_stage_rules(int stage);

  void final_cleanup(int final_r);

  Signature matched_rank_histogram() const;
};

SolveResult export_result(const StageRun& run);

}  // namespace rmm::detail
