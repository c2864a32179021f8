#include "rmm/verify.hpp"

#include <map>
#include <sstream>

#include "rmm/graph.hpp"
#include "rmm/solver.hpp"

namespace rmm {

namespace {

std::string label_set(const Instance& inst, const std::vector<Label>& labels) {
  std::ostringstream out;
  std::map<std::string, const char*> by_name;
  for (int v = 0; v < inst.vertex_slots(); ++v)
    if (inst.vertex_alive(v)) by_name[inst.name(v)] = label_name(labels[v]);
  for (const auto& [n, l] : by_name) out << n << "=" << l << " ";
  return out.str();
}

std::string edge_list(const Instance& inst, const std::vector<int>& edges) {
  std::ostringstream out;
  std::map<std::pair<std::string, std::string>, int> by_name;
  for (int e : edges) {
    const RankedEdge& ed = inst.edge(e);
    by_name[{inst.name(ed.applicant), inst.name(ed.post)}] = ed.rank;
  }
  for (const auto& [np, r] : by_name)
    out << "(" << np.first << "," << np.second << ")@" << r << " ";
  return out.str();
}

}  // namespace

std::optional<std::string> diff_against_fresh_solve(const Engine& engine) {
  const Instance& inst = engine.instance();

  std::vector<StageSnapshot> snapshots;
  SolveOptions opt;
  opt.observer = [&](const StageSnapshot& s) { snapshots.push_back(s); };
  SolveResult fresh = solve(inst, opt);

  if (fresh.signature != engine.signature())
    return "signature differs: maintained " + engine.signature().to_string() +
           ", fresh " + fresh.signature.to_string();

  if (fresh.store.final_r != engine.store().final_r)
    return "stage count differs: maintained " +
           std::to_string(engine.store().final_r) + ", fresh " +
           std::to_string(fresh.store.final_r);

  for (const StageSnapshot& snap : snapshots) {
    std::vector<int> kept =
        reconstruct_reduced_graph(inst, engine.store(), snap.stage);
    if (kept != snap.graph_edges)
      return "stage " + std::to_string(snap.stage) +
             " reduced graph differs:\n  maintained: " +
             edge_list(inst, kept) + "\n  fresh:      " +
             edge_list(inst, snap.graph_edges);

    // The maintained matching restricted to this stage's ranks must be a
    // maximum matching of the stage graph and induce the same labels.
    Matching restricted;
    for (const MatchedPair& pr : engine.matching().pairs) {
      auto e = inst.find_edge(pr.applicant, pr.post);
      if (e && inst.edge(*e).rank <= snap.stage)
        restricted.pairs.push_back(pr);
    }
    StageGraph g = StageGraph::from_edges(inst, kept);
    std::vector<Label> labels;
    try {
      labels = classify_eou(g, mate_vector(inst, restricted));
    } catch (const std::invalid_argument&) {
      return "stage " + std::to_string(snap.stage) +
             ": maintained matching is not maximum in the stage graph";
    }
    if (labels != snap.labels)
      return "stage " + std::to_string(snap.stage) +
             " labels differ:\n  maintained: " + label_set(inst, labels) +
             "\n  fresh:      " + label_set(inst, snap.labels);
  }

  if (!(fresh.store == engine.store())) {
    for (int v = 0; v < inst.vertex_slots(); ++v) {
      if (!inst.vertex_alive(v)) continue;
      if (!(fresh.store.vertex_records[v] == engine.store().vertex_records[v]))
        return "vertex record for " + inst.name(v) + " differs";
    }
    for (int e = 0; e < inst.edge_slots(); ++e) {
      if (!inst.edge_alive(e)) continue;
      if (!(fresh.store.edge_records[e] == engine.store().edge_records[e])) {
        const RankedEdge& ed = inst.edge(e);
        return "edge record for (" + inst.name(ed.applicant) + "," +
               inst.name(ed.post) + ") differs";
      }
    }
    return "stage counts differ";
  }
  return std::nullopt;
}

}  // namespace rmm
