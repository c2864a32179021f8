#include "rmm/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace rmm {

StageGraph StageGraph::from_edges(const Instance& inst,
                                  std::span<const int> edges,
                                  bool reverse_scan) {
  StageGraph g;
  g.inst = &inst;
  g.adj.resize(inst.vertex_slots());
  g.in_graph.assign(inst.edge_slots(), 0);
  g.ever_.assign(inst.edge_slots(), 0);
  g.reverse_scan = reverse_scan;
  for (int e : edges) g.insert_edge(e);
  return g;
}

void StageGraph::insert_edge(int e) {
  const RankedEdge& ed = inst->edge(e);
  if (in_graph[e]) throw std::invalid_argument("edge already in stage graph");
  if (!ever_[e]) {
    adj[ed.applicant].push_back(e);
    adj[ed.post].push_back(e);
    ever_[e] = 1;
  }
  in_graph[e] = 1;
  ++count_;
}

void StageGraph::remove_edge(int e) {
  if (!in_graph[e]) throw std::invalid_argument("edge not in stage graph");
  in_graph[e] = 0;  // adjacency entries stay and are skipped by scans
  --count_;
}

int StageGraph::edge_count() const { return count_; }

std::vector<int> StageGraph::edges() const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(in_graph.size()); ++e)
    if (in_graph[e]) out.push_back(e);
  return out;
}

MateVector mate_vector(const Instance& inst, const Matching& m) {
  MateVector mate = empty_matching(inst);
  for (const MatchedPair& pr : m.pairs) {
    if (!inst.vertex_alive(pr.applicant) || !inst.vertex_alive(pr.post) ||
        !inst.find_edge(pr.applicant, pr.post))
      throw std::invalid_argument("matching pair is not an instance edge");
    if (mate[pr.applicant] != -1 || mate[pr.post] != -1)
      throw std::invalid_argument("matching repeats an endpoint");
    mate[pr.applicant] = pr.post;
    mate[pr.post] = pr.applicant;
  }
  return mate;
}

Matching to_matching(const Instance& inst, const MateVector& mate) {
  Matching m;
  for (int v = 0; v < inst.vertex_slots(); ++v) {
    if (!inst.vertex_alive(v) || inst.side(v) != Side::applicant) continue;
    if (mate[v] != -1) m.pairs.push_back({v, mate[v]});
  }
  m.normalize();
  return m;
}

namespace {

// Reusable buffers for the alternating BFS; epoch stamps avoid clearing
// per call.
struct BfsScratch {
  std::vector<int> prev_even;  // previous even vertex on the tree path
  std::vector<int> via_odd;    // odd vertex crossed to reach an even vertex
  std::vector<int> seen;       // epoch stamp of the even-side visit
  std::vector<int> queue;
  int epoch = 0;

  void prepare(int n) {
    if (static_cast<int>(seen.size()) < n) {
      prev_even.resize(n, -1);
      via_odd.resize(n, -1);
      seen.resize(n, 0);
    }
    ++epoch;
    queue.clear();
  }
};

template <typename Fn>
void for_each_adj(const StageGraph& g, int u, Fn&& fn) {
  const std::vector<int>& lst = g.adj[u];
  if (!g.reverse_scan) {
    for (int e : lst)
      if (g.in_graph[e]) fn(e);
  } else {
    for (auto it = lst.rbegin(); it != lst.rend(); ++it)
      if (g.in_graph[*it]) fn(*it);
  }
}

std::vector<int> default_roots(const StageGraph& g, const MateVector& mate) {
  std::vector<int> roots;
  const Instance& inst = *g.inst;
  for (int v = 0; v < inst.vertex_slots(); ++v)
    if (inst.vertex_alive(v) && mate[v] == -1) roots.push_back(v);
  if (g.reverse_scan) std::reverse(roots.begin(), roots.end());
  return roots;
}

std::optional<std::vector<int>> find_path_impl(const StageGraph& g,
                                               const MateVector& mate,
                                               const std::vector<int>* roots,
                                               BfsScratch& s) {
  const Instance& inst = *g.inst;
  s.prepare(inst.vertex_slots());

  std::vector<int> own_roots;
  if (!roots) {
    own_roots = default_roots(g, mate);
    roots = &own_roots;
  }
  for (int r : *roots) {
    if (!inst.vertex_alive(r))
      throw std::invalid_argument("augmenting path root is not alive");
    if (mate[r] != -1)
      throw std::invalid_argument("augmenting path root is matched");
    if (s.seen[r] == s.epoch) continue;
    s.seen[r] = s.epoch;
    s.prev_even[r] = -1;
    s.via_odd[r] = -1;
    s.queue.push_back(r);
  }

  for (std::size_t head = 0; head < s.queue.size(); ++head) {
    int u = s.queue[head];
    int found_free = -1;
    for_each_adj(g, u, [&](int e) {
      if (found_free != -1) return;
      int w = inst.other_endpoint(e, u);
      if (w == mate[u]) return;  // even vertices expand over unmatched edges
      if (mate[w] == -1) {
        found_free = w;
        return;
      }
      int v2 = mate[w];
      if (s.seen[v2] == s.epoch) return;
      s.seen[v2] = s.epoch;
      s.prev_even[v2] = u;
      s.via_odd[v2] = w;
      s.queue.push_back(v2);
    });
    if (found_free != -1) {
      std::vector<int> path{found_free};
      for (int cur = u; cur != -1; cur = s.prev_even[cur]) {
        path.push_back(cur);
        if (s.via_odd[cur] != -1) path.push_back(s.via_odd[cur]);
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<int>> find_augmenting_path(
    const StageGraph& g, const MateVector& mate,
    const std::vector<int>* roots) {
  BfsScratch s;
  return find_path_impl(g, mate, roots, s);
}

void augment(MateVector& mate, const std::vector<int>& path) {
  if (path.size() < 2 || path.size() % 2 != 0)
    throw std::invalid_argument("augmenting path must have even length >= 2");
  if (mate[path.front()] != -1 || mate[path.back()] != -1)
    throw std::invalid_argument("augmenting path endpoints must be free");
  for (std::size_t i = 0; i + 1 < path.size(); i += 2) {
    mate[path[i]] = path[i + 1];
    mate[path[i + 1]] = path[i];
  }
}

int maximum_matching(const StageGraph& g, MateVector& mate) {
  BfsScratch s;
  int augmentations = 0;
  while (auto path = find_path_impl(g, mate, nullptr, s)) {
    augment(mate, *path);
    ++augmentations;
  }
  return augmentations;
}

std::vector<Label> classify_eou(const StageGraph& g, const MateVector& mate) {
  const Instance& inst = *g.inst;
  int n = inst.vertex_slots();
  std::vector<Label> labels(n, Label::unreachable);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v) {
    if (inst.vertex_alive(v) && mate[v] == -1) {
      labels[v] = Label::even;
      queue.push_back(v);
    }
  }
  if (g.reverse_scan) std::reverse(queue.begin(), queue.end());

  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for_each_adj(g, u, [&](int e) {
      int w = inst.other_endpoint(e, u);
      if (w == mate[u]) return;
      if (mate[w] == -1) {
        // An unmatched edge from an even vertex to a free vertex completes an
        // augmenting path, so the matching was not maximum.
        throw std::invalid_argument("classify_eou requires a maximum matching");
      }
      if (labels[w] != Label::unreachable) return;
      labels[w] = Label::odd;
      int v2 = mate[w];
      if (labels[v2] == Label::odd)
        throw std::logic_error("alternating parity violation");
      if (labels[v2] == Label::unreachable) {
        labels[v2] = Label::even;
        queue.push_back(v2);
      }
    });
  }
  return labels;
}

}  // namespace rmm
