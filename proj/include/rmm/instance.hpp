// Bipartite applicant/post instances with one-sided ranked preferences.
//
// Vertices live in one handle space (stable integer slots, tombstoned on
// removal, never reused). Each vertex also carries a per-side dense index and
// a unique name. Edges are (applicant, post, rank) triples, at most one edge
// per pair, stored in stable slots of their own.
#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rmm {

enum class Side : std::uint8_t { applicant, post };

inline const char* side_name(Side s) {
  return s == Side::applicant ? "applicant" : "post";
}

// Stage number used for "never happens" in stage-indexed records.
inline constexpr int k_no_stage = std::numeric_limits<int>::max();

struct VertexId {
  Side side;
  int index;  // dense per side, assigned in creation order, never reused
  std::string name;
};

// Vertex handles are slots into the instance table; `applicant` and `post`
// below are handles, not per-side indices.
struct RankedEdge {
  int applicant = -1;
  int post = -1;
  int rank = 0;

  friend bool operator==(const RankedEdge&, const RankedEdge&) = default;
};

struct MatchedPair {
  int applicant = -1;
  int post = -1;

  friend auto operator<=>(const MatchedPair&, const MatchedPair&) = default;
};

// A matching as a plain pair list. Helpers keep it sorted by applicant handle
// so two matchings compare structurally.
struct Matching {
  std::vector<MatchedPair> pairs;

  void normalize();
  bool contains(const MatchedPair& pr) const;
  std::optional<int> post_of(int applicant) const;
  int size() const { return static_cast<int>(pairs.size()); }

  friend bool operator==(const Matching&, const Matching&) = default;
};

// counts[k] = number of applicants matched at rank k+1. Comparison pads the
// shorter vector with zeros, so (1) == (1,0) and () < (0,0,1).
struct Signature {
  std::vector<int> counts;

  std::string to_string() const;  // "(4,0,1)"
};

std::strong_ordering compare_signatures(const Signature& a, const Signature& b);
inline bool operator==(const Signature& a, const Signature& b) {
  return compare_signatures(a, b) == std::strong_ordering::equal;
}
inline auto operator<=>(const Signature& a, const Signature& b) {
  return compare_signatures(a, b);
}

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
        line(line_no) {}
};

class Instance {
 public:
  // Mutators. Names are unique across both sides; ranks start at 1. A removed
  // vertex drops its edges and frees its name for reuse (under a new handle).
  int add_vertex(Side side, std::string name);
  void remove_vertex(int v);
  int add_edge(int applicant, int post, int rank);
  void remove_edge(int e);

  // Vertex queries. Handles run over [0, vertex_slots()); dead slots stay.
  int vertex_slots() const { return static_cast<int>(vertices_.size()); }
  bool vertex_alive(int v) const { return valid_vertex(v) && vertices_[v].alive; }
  Side side(int v) const { return checked_vertex(v).side; }
  const std::string& name(int v) const { return checked_vertex(v).name; }
  int side_index(int v) const { return checked_vertex(v).side_index; }
  VertexId id(int v) const;
  std::optional<int> find_vertex(std::string_view name) const;
  int vertex_count() const { return alive_vertices_; }
  int side_count(Side s) const;
  std::vector<int> vertices() const;        // alive handles, ascending
  std::vector<int> vertices(Side s) const;  // alive handles of one side

  // Edge queries. Slots run over [0, edge_slots()).
  int edge_slots() const { return static_cast<int>(edges_.size()); }
  bool edge_alive(int e) const { return valid_edge(e) && edges_[e].alive; }
  const RankedEdge& edge(int e) const;
  std::optional<int> find_edge(int applicant, int post) const;
  int edge_count() const { return alive_edges_; }
  std::vector<int> edge_ids() const;  // alive slots, ascending
  // Alive incident edge slots in insertion order.
  const std::vector<int>& incident(int v) const;
  int max_rank() const;  // 0 when edgeless

  int other_endpoint(int e, int v) const;

  bool operator==(const Instance& rhs) const;  // structural, by names

 private:
  struct Vertex {
    Side side;
    int side_index;
    std::string name;
    bool alive = true;
    std::vector<int> incident;  // alive edge slots, insertion order
  };
  struct Edge {
    RankedEdge data;
    bool alive = true;
  };

  bool valid_vertex(int v) const {
    return v >= 0 && v < static_cast<int>(vertices_.size());
  }
  bool valid_edge(int e) const {
    return e >= 0 && e < static_cast<int>(edges_.size());
  }
  const Vertex& checked_vertex(int v) const;
  Vertex& checked_vertex(int v);
  const Edge& checked_edge(int e) const;

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> by_name_;
  int side_counts_[2] = {0, 0};        // alive vertices per side
  int side_counts_total_[2] = {0, 0};  // ever created per side, for dense ids
  int alive_vertices_ = 0;
  int alive_edges_ = 0;
};

// Text format, one applicant per line:
//
//   a1 : p1,(p2,p3),p4    # rank 1: p1; rank 2: p2 and p3 tied; rank 3: p4
//
// List position defines the rank. '#' starts a comment, blank lines are
// skipped. Errors carry 1-based line numbers.
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

// One "<applicant> <post> <rank>" line per pair, sorted by applicant name.
std::string serialize_matching(const Instance& inst, const Matching& m);

Signature signature_of(const Instance& inst, const Matching& m);

struct MatchingViolation {
  enum class Kind { unknown_vertex, no_such_edge, duplicate_applicant, duplicate_post };
  Kind kind;
  std::string message;
};

std::vector<MatchingViolation> validate_matching(const Instance& inst,
                                                 const Matching& m);

}  // namespace rmm
