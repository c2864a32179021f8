#include "rmm/solver.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "stage_run.hpp"

namespace rmm {

const char* delete_cause_name(DeleteCause c) {
  switch (c) {
    case DeleteCause::none: return "none";
    case DeleteCause::higher_rank: return "higher_rank";
    case DeleteCause::odd_prune: return "odd_prune";
    default: return "final_cleanup";
  }
}

Signature PreprocessStore::prefix_signature(int stage) const {
  if (stage < 0 || stage > final_r)
    throw std::invalid_argument("stage out of range");
  Signature sig;
  sig.counts.assign(stage_counts.begin(), stage_counts.begin() + stage);
  return sig;
}

namespace detail {

void StageRun::init(const Instance& instance, bool reverse_scan) {
  inst = &instance;
  max_rank = instance.max_rank();
  g = StageGraph::from_edges(instance, {}, reverse_scan);
  mate = empty_matching(instance);
  labels.assign(instance.vertex_slots(), Label::even);
  rec.vertex_records.assign(instance.vertex_slots(), {});
  rec.edge_records.assign(instance.edge_slots(), {});
  rec.stage_counts.assign(max_rank, 0);
  rec.final_r = max_rank;
  rank_buckets.assign(max_rank + 1, {});
  for (int e = 0; e < instance.edge_slots(); ++e)
    if (instance.edge_alive(e)) rank_buckets[instance.edge(e).rank].push_back(e);
}

std::vector<int> StageRun::pending_stage_edges(int stage) const {
  std::vector<int> out;
  for (int e : rank_buckets[stage])
    if (rec.edge_records[e].deleted_at == k_no_stage) out.push_back(e);
  return out;
}

void StageRun::insert_edges(const std::vector<int>& edge_slots) {
  for (int e : edge_slots) g.insert_edge(e);
}

int StageRun::augment_to_maximum() { return maximum_matching(g, mate); }

void StageRun::classify_now() { labels = classify_eou(g, mate); }

void StageRun::apply_stage_rules(int stage) {
  const Instance& in = *inst;

  std::vector<int> newly;
  for (int v = 0; v < in.vertex_slots(); ++v) {
    if (!in.vertex_alive(v) || labels[v] == Label::even) continue;
    if (rec.vertex_records[v].became_at != k_no_stage) continue;
    rec.vertex_records[v] = {stage, labels[v]};
    newly.push_back(v);
  }

  // A vertex that stops being even can no longer gain from worse-ranked
  // edges; drop them before they ever enter the graph.
  for (int v : newly) {
    for (int e : in.incident(v)) {
      if (in.edge(e).rank <= stage) continue;
      if (rec.edge_records[e].deleted_at != k_no_stage) continue;
      if (g.in_graph[e])
        throw std::logic_error("internal: higher-rank edge already staged");
      rec.edge_records[e] = {stage, DeleteCause::higher_rank};
    }
  }

  // No maximum matching of the stage graph uses an edge joining an odd
  // vertex to a non-even vertex.
  for (int v = 0; v < in.vertex_slots(); ++v) {
    if (!in.vertex_alive(v) || labels[v] != Label::odd) continue;
    for (int e : g.adj[v]) {
      if (!g.in_graph[e]) continue;
      int w = in.other_endpoint(e, v);
      if (labels[w] == Label::even) continue;
      if (rec.edge_records[e].deleted_at != k_no_stage)
        throw std::logic_error("internal: pruning an already deleted edge");
      g.remove_edge(e);
      rec.edge_records[e] = {stage, DeleteCause::odd_prune};
    }
  }

  Signature hist = matched_rank_histogram();
  for (int k = 0; k + 1 < stage; ++k) {
    int have = k < static_cast<int>(hist.counts.size()) ? hist.counts[k] : 0;
    if (have != rec.stage_counts[k])
      throw std::logic_error(
          "internal: an earlier stage's matched count changed");
  }
  rec.stage_counts[stage - 1] =
      stage <= static_cast<int>(hist.counts.size()) ? hist.counts[stage - 1]
                                                    : 0;

  for (int v = 0; v < in.vertex_slots(); ++v) {
    if (!in.vertex_alive(v) || in.side(v) != Side::applicant) continue;
    if (mate[v] == -1) continue;
    auto e = in.find_edge(v, mate[v]);
    if (!e || !g.in_graph[*e])
      throw std::logic_error("internal: matched edge left the stage graph");
  }
}

void StageRun::final_cleanup(int final_r) {
  const Instance& in = *inst;
  for (int v = 0; v < in.vertex_slots(); ++v) {
    if (!in.vertex_alive(v) || labels[v] != Label::odd) continue;
    for (int e : g.adj[v]) {
      if (!g.in_graph[e]) continue;
      int w = in.other_endpoint(e, v);
      if (labels[w] != Label::unreachable) continue;
      g.remove_edge(e);
      rec.edge_records[e] = {final_r + 1, DeleteCause::final_cleanup};
    }
  }
}

Signature StageRun::matched_rank_histogram() const {
  Signature sig;
  const Instance& in = *inst;
  for (int v = 0; v < in.vertex_slots(); ++v) {
    if (!in.vertex_alive(v) || in.side(v) != Side::applicant) continue;
    if (mate[v] == -1) continue;
    auto e = in.find_edge(v, mate[v]);
    if (!e) throw std::logic_error("internal: matched pair without an edge");
    int rank = in.edge(*e).rank;
    if (static_cast<int>(sig.counts.size()) < rank) sig.counts.resize(rank, 0);
    ++sig.counts[rank - 1];
  }
  return sig;
}

SolveResult export_result(const StageRun& run) {
  SolveResult out;
  out.matching = to_matching(*run.inst, run.mate);
  out.signature = signature_of(*run.inst, out.matching);
  out.store = run.rec;
  Signature from_counts;
  from_counts.counts = run.rec.stage_counts;
  if (compare_signatures(out.signature, from_counts) !=
      std::strong_ordering::equal)
    throw std::logic_error("internal: stage counts disagree with the matching");
  return out;
}

}  // namespace detail

SolveResult solve(const Instance& inst, const SolveOptions& opt) {
  detail::StageRun run;
  run.init(inst, opt.reverse_scan);
  for (int stage = 1; stage <= run.max_rank; ++stage) {
    run.insert_edges(run.pending_stage_edges(stage));
    run.augment_to_maximum();
    run.classify_now();
    run.apply_stage_rules(stage);
    if (opt.observer)
      opt.observer(StageSnapshot{stage, run.g.edges(), run.labels, run.mate});
  }
  if (run.max_rank > 0) run.final_cleanup(run.max_rank);
  return detail::export_result(run);
}

Matching stage_matching(const Instance& inst, const SolveResult& result,
                        int stage) {
  if (stage < 0 || stage > result.store.final_r)
    throw std::invalid_argument("stage out of range");
  Matching out;
  for (const MatchedPair& pr : result.matching.pairs) {
    auto e = inst.find_edge(pr.applicant, pr.post);
    if (!e) throw std::invalid_argument("matching pair is not an instance edge");
    if (inst.edge(*e).rank <= stage) out.pairs.push_back(pr);
  }
  out.normalize();
  return out;
}

std::vector<int> reconstruct_reduced_graph(const Instance& inst,
                                           const PreprocessStore& store,
                                           int stage) {
  if (stage < 0 || stage > store.final_r)
    throw std::invalid_argument("stage out of range");
  std::vector<int> out;
  for (int e = 0; e < inst.edge_slots(); ++e) {
    if (!inst.edge_alive(e)) continue;
    if (inst.edge(e).rank > stage) continue;
    if (store.edge_records[e].deleted_at <= stage) continue;
    out.push_back(e);
  }
  return out;
}

std::string serialize_store(const Instance& inst,
                            const PreprocessStore& store) {
  std::ostringstream out;
  out << "R " << store.final_r << "\n";
  out << "C";
  for (int c : store.stage_counts) out << ' ' << c;
  out << "\n";

  std::map<std::string, std::string> vlines;
  for (int v = 0; v < inst.vertex_slots(); ++v) {
    if (!inst.vertex_alive(v)) continue;
    const VertexStageRecord& r = store.vertex_records[v];
    if (r.became_at == k_no_stage) continue;
    vlines[inst.name(v)] = "V " + inst.name(v) + " " +
                           std::to_string(r.became_at) + " " +
                           label_name(r.kind);
  }
  for (const auto& [_, line] : vlines) out << line << "\n";

  std::map<std::pair<std::string, std::string>, std::string> elines;
  for (int e = 0; e < inst.edge_slots(); ++e) {
    if (!inst.edge_alive(e)) continue;
    const EdgeStageRecord& r = store.edge_records[e];
    if (r.deleted_at == k_no_stage) continue;
    const RankedEdge& ed = inst.edge(e);
    std::string an = inst.name(ed.applicant), pn = inst.name(ed.post);
    elines[{an, pn}] = "E " + an + " " + pn + " " + std::to_string(ed.rank) +
                       " " + std::to_string(r.deleted_at) + " " +
                       delete_cause_name(r.cause);
  }
  for (const auto& [_, line] : elines) out << line << "\n";
  return out.str();
}

PreprocessStore parse_store(const Instance& inst, std::string_view text) {
  PreprocessStore store;
  store.vertex_records.assign(inst.vertex_slots(), {});
  store.edge_records.assign(inst.edge_slots(), {});
  bool have_r = false;

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;

    auto need_int = [&](const char* what) {
      int x;
      if (!(ls >> x)) throw ParseError(line_no, std::string("expected ") + what);
      return x;
    };
    auto need_word = [&](const char* what) {
      std::string w;
      if (!(ls >> w)) throw ParseError(line_no, std::string("expected ") + what);
      return w;
    };
    auto reject_extra = [&] {
      std::string extra;
      if (ls >> extra) throw ParseError(line_no, "unexpected '" + extra + "'");
    };

    if (tag == "R") {
      if (have_r) throw ParseError(line_no, "duplicate R line");
      store.final_r = need_int("stage count");
      if (store.final_r < 0) throw ParseError(line_no, "negative stage count");
      have_r = true;
      reject_extra();
    } else if (tag == "C") {
      if (!have_r) throw ParseError(line_no, "C line before R line");
      store.stage_counts.clear();
      int x;
      while (ls >> x) store.stage_counts.push_back(x);
      if (static_cast<int>(store.stage_counts.size()) != store.final_r)
        throw ParseError(line_no, "C line must list one count per stage");
    } else if (tag == "V") {
      if (!have_r) throw ParseError(line_no, "V line before R line");
      std::string name = need_word("vertex name");
      int stage = need_int("stage");
      std::string kind = need_word("odd|unreachable");
      reject_extra();
      auto v = inst.find_vertex(name);
      if (!v) throw ParseError(line_no, "unknown vertex '" + name + "'");
      if (stage < 1 || stage > store.final_r)
        throw ParseError(line_no, "stage out of range");
      if (store.vertex_records[*v].became_at != k_no_stage)
        throw ParseError(line_no, "duplicate record for '" + name + "'");
      Label l;
      if (kind == "odd") l = Label::odd;
      else if (kind == "unreachable") l = Label::unreachable;
      else throw ParseError(line_no, "bad label '" + kind + "'");
      store.vertex_records[*v] = {stage, l};
    } else if (tag == "E") {
      if (!have_r) throw ParseError(line_no, "E line before R line");
      std::string an = need_word("applicant name");
      std::string pn = need_word("post name");
      int rank = need_int("rank");
      int stage = need_int("stage");
      std::string cause = need_word("delete cause");
      reject_extra();
      auto a = inst.find_vertex(an);
      auto p = inst.find_vertex(pn);
      if (!a || !p) throw ParseError(line_no, "unknown endpoint");
      auto e = inst.find_edge(*a, *p);
      if (!e) throw ParseError(line_no, "(" + an + "," + pn + ") is not an edge");
      if (inst.edge(*e).rank != rank)
        throw ParseError(line_no, "rank disagrees with the instance");
      if (store.edge_records[*e].deleted_at != k_no_stage)
        throw ParseError(line_no, "duplicate record for the edge");
      DeleteCause c;
      if (cause == "higher_rank") c = DeleteCause::higher_rank;
      else if (cause == "odd_prune") c = DeleteCause::odd_prune;
      else if (cause == "final_cleanup") c = DeleteCause::final_cleanup;
      else throw ParseError(line_no, "bad delete cause '" + cause + "'");
      if (stage < 1 || stage > store.final_r + 1)
        throw ParseError(line_no, "stage out of range");
      if (c == DeleteCause::higher_rank && stage >= rank)
        throw ParseError(line_no, "higher_rank deletion must precede the rank");
      if (c != DeleteCause::higher_rank && stage < rank)
        throw ParseError(line_no, "deletion cannot precede the edge's stage");
      store.edge_records[*e] = {stage, c};
    } else {
      throw ParseError(line_no, "unknown tag '" + tag + "'");
    }
  }
  if (!have_r) throw ParseError(line_no ? line_no : 1, "missing R line");
  if (static_cast<int>(store.stage_counts.size()) != store.final_r)
    throw ParseError(line_no ? line_no : 1, "missing C line");
  return store;
}

}  // namespace rmm
