// Maximum-matching primitives on a stage graph (an edge subset of an
// instance): shortest augmenting paths by BFS, repeated augmentation, and the
// even/odd/unreachable decomposition with respect to a maximum matching.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rmm/instance.hpp"

namespace rmm {

enum class Label : std::uint8_t { even, odd, unreachable };

inline const char* label_name(Label l) {
  switch (l) {
    case Label::even: return "even";
    case Label::odd: return "odd";
    default: return "unreachable";
  }
}

// An edge subset of an instance, with its own adjacency lists. Vertices are
// the instance's alive vertices; `adj[v]` holds edge slots in insertion
// order, and `in_graph[e]` tells whether a slot currently belongs to the
// graph. `reverse_scan` flips every deterministic iteration rule (BFS roots
// and adjacency order), which exercises that the decomposition does not
// depend on the matching the scan order produces.
struct StageGraph {
  const Instance* inst = nullptr;
  std::vector<std::vector<int>> adj;
  std::vector<char> in_graph;
  bool reverse_scan = false;

  static StageGraph from_edges(const Instance& inst, std::span<const int> edges,
                               bool reverse_scan = false);

  void insert_edge(int e);  // must not currently be in the graph
  void remove_edge(int e);  // must currently be in the graph
  int edge_count() const;
  std::vector<int> edges() const;  // in-graph slots, ascending

 private:
  std::vector<char> ever_;  // slots that were ever inserted, to keep adj clean
  int count_ = 0;
};

// mate[v] is the matched partner of vertex handle v, or -1. Sized like the
// instance's handle space.
using MateVector = std::vector<int>;

inline MateVector empty_matching(const Instance& inst) {
  return MateVector(static_cast<std::size_t>(inst.vertex_slots()), -1);
}

MateVector mate_vector(const Instance& inst, const Matching& m);
Matching to_matching(const Instance& inst, const MateVector& mate);

// Shortest alternating path between two free vertices, found by one BFS that
// starts from every root simultaneously (roots default to all free alive
// vertices). Roots must be unmatched. Returns the path as a vertex handle
// sequence, or nothing if the matching is maximum with respect to the roots.
std::optional<std::vector<int>> find_augmenting_path(
    const StageGraph& g, const MateVector& mate,
    const std::vector<int>* roots = nullptr);

// Flips the matching along an augmenting path.
void augment(MateVector& mate, const std::vector<int>& path);

// Repeatedly augments until no augmenting path remains; returns how many
// augmentations were applied.
int maximum_matching(const StageGraph& g, MateVector& mate);

// Labels every alive vertex even, odd, or unreachable by its alternating
// distance from the free vertices. Requires a maximum matching; the labeling
// is then the same for every maximum matching of the graph.
std::vector<Label> classify_eou(const StageGraph& g, const MateVector& mate);

}  // namespace rmm
