#include "rmm/engine.hpp"

#include <algorithm>
#include <sstream>

#include "stage_run.hpp"

namespace rmm {

Engine::Engine(Instance inst) : inst_(std::move(inst)) {
  cur_ = solve(inst_);
}

Engine::Engine(Instance inst, Matching adopt) : inst_(std::move(inst)) {
  cur_ = solve(inst_);
  auto violations = validate_matching(inst_, adopt);
  if (!violations.empty())
    throw std::invalid_argument("adopted matching is invalid: " +
                                violations.front().message);
  if (signature_of(inst_, adopt) != cur_.signature)
    throw std::invalid_argument(
        "adopted matching does not have the optimal signature");
  adopt.normalize();
  cur_.matching = std::move(adopt);
}

std::vector<Label> Engine::final_labels() const {
  std::vector<int> edges =
      reconstruct_reduced_graph(inst_, cur_.store, cur_.store.final_r);
  StageGraph g = StageGraph::from_edges(inst_, edges);
  return classify_eou(g, mate_vector(inst_, cur_.matching));
}

UpdateReport Engine::add_vertex(const std::string& name, Side side,
                                const std::vector<NeighborSpec>& neighbors) {
  if (inst_.find_vertex(name))
    throw std::invalid_argument("vertex '" + name + "' already exists");
  Side other = side == Side::applicant ? Side::post : Side::applicant;
  std::vector<int> nbr_handles;
  std::set<std::string> seen;
  for (const NeighborSpec& n : neighbors) {
    auto h = inst_.find_vertex(n.name);
    if (!h || inst_.side(*h) != other)
      throw std::invalid_argument("neighbor '" + n.name + "' is not an alive " +
                                  side_name(other));
    if (!seen.insert(n.name).second)
      throw std::invalid_argument("neighbor '" + n.name + "' listed twice");
    if (n.rank < 1) throw std::invalid_argument("rank must be at least 1");
    nbr_handles.push_back(*h);
  }

  int v = inst_.add_vertex(side, name);
  std::vector<int> new_edges;
  int affected_from = k_no_stage;
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    int a = side == Side::applicant ? v : nbr_handles[i];
    int p = side == Side::applicant ? nbr_handles[i] : v;
    new_edges.push_back(inst_.add_edge(a, p, neighbors[i].rank));
    affected_from = std::min(affected_from, neighbors[i].rank);
  }
  return run_update(affected_from, new_edges);
}

UpdateReport Engine::delete_vertex(const std::string& name) {
  auto v = inst_.find_vertex(name);
  if (!v) throw std::invalid_argument("no vertex named '" + name + "'");
  int affected_from = k_no_stage;
  for (int e : inst_.incident(*v))
    affected_from = std::min(affected_from, inst_.edge(e).rank);
  inst_.remove_vertex(*v);
  return run_update(affected_from, {});
}

UpdateReport Engine::add_edge(const std::string& applicant,
                              const std::string& post, int rank) {
  auto a = inst_.find_vertex(applicant);
  if (!a || inst_.side(*a) != Side::applicant)
    throw std::invalid_argument("'" + applicant + "' is not an alive applicant");
  auto p = inst_.find_vertex(post);
  if (!p || inst_.side(*p) != Side::post)
    throw std::invalid_argument("'" + post + "' is not an alive post");
  if (rank < 1) throw std::invalid_argument("rank must be at least 1");
  if (inst_.find_edge(*a, *p))
    throw std::invalid_argument("edge (" + applicant + "," + post +
                                ") already exists");

  return splice_applicant_edges(*a, -1, std::pair(*p, rank));
}

UpdateReport Engine::delete_edge(const std::string& applicant,
                                 const std::string& post) {
  auto a = inst_.find_vertex(applicant);
  if (!a || inst_.side(*a) != Side::applicant)
    throw std::invalid_argument("'" + applicant + "' is not an alive applicant");
  auto p = inst_.find_vertex(post);
  if (!p || inst_.side(*p) != Side::post)
    throw std::invalid_argument("'" + post + "' is not an alive post");
  if (!inst_.find_edge(*a, *p))
    throw std::invalid_argument("edge (" + applicant + "," + post +
                                ") does not exist");

  return splice_applicant_edges(*a, *p, std::nullopt);
}

UpdateReport Engine::splice_applicant_edges(
    int a, int drop_post, std::optional<std::pair<int, int>> extra) {
  Signature old_sig = cur_.signature;

  std::vector<std::pair<int, int>> keep;  // (post, rank) in incidence order
  std::vector<int> doomed;
  int detach_from = k_no_stage;
  for (int e : inst_.incident(a)) {
    const RankedEdge& ed = inst_.edge(e);
    detach_from = std::min(detach_from, ed.rank);
    doomed.push_back(e);
    if (ed.post != drop_post) keep.push_back({ed.post, ed.rank});
  }
  for (int e : doomed) inst_.remove_edge(e);

  UpdateReport total;
  auto fold = [&total](const UpdateReport& leg) {
    total.stages_touched += leg.stages_touched;
    total.augmentations += leg.augmentations;
    total.edges_deleted += leg.edges_deleted;
    total.edges_restored += leg.edges_restored;
  };
  if (!doomed.empty()) fold(run_update(detach_from, {}));

  if (extra) keep.push_back(*extra);
  if (!keep.empty()) {
    std::vector<int> new_edges;
    int attach_from = k_no_stage;
    for (auto [p, rank] : keep) {
      new_edges.push_back(inst_.add_edge(a, p, rank));
      attach_from = std::min(attach_from, rank);
    }
    fold(run_update(attach_from, new_edges));
  }

  total.old_signature = std::move(old_sig);
  total.new_signature = cur_.signature;
  return total;
}

UpdateReport Engine::run_update(int affected_from,
                                const std::vector<int>& new_edges) {
  const PreprocessStore old_store = std::move(cur_.store);
  const Matching old_matching = std::move(cur_.matching);
  const Signature old_sig = std::move(cur_.signature);

  auto old_became = [&](int v) {
    if (v < 0 || v >= static_cast<int>(old_store.vertex_records.size()))
      return k_no_stage;
    return old_store.vertex_records[v].became_at;
  };

  detail::StageRun run;
  run.init(inst_, false);
  int r_new = run.max_rank;
  // First stage the update re-derives; every record strictly before it (and
  // within the new stage range) is kept verbatim.
  int start = std::min(affected_from, r_new + 1);

  for (int v = 0; v < static_cast<int>(old_store.vertex_records.size()); ++v) {
    if (!inst_.vertex_alive(v)) continue;
    if (old_store.vertex_records[v].became_at < start)
      run.rec.vertex_records[v] = old_store.vertex_records[v];
  }
  for (int e = 0; e < static_cast<int>(old_store.edge_records.size()); ++e) {
    if (!inst_.edge_alive(e)) continue;
    const EdgeStageRecord& r = old_store.edge_records[e];
    if (r.deleted_at < start && r.cause != DeleteCause::final_cleanup)
      run.rec.edge_records[e] = r;
  }
  for (int k = 0; k + 1 < start; ++k)
    if (k < static_cast<int>(old_store.stage_counts.size()))
      run.rec.stage_counts[k] = old_store.stage_counts[k];

  // A new edge whose other endpoint had already stopped being even before the
  // window starts is dead on arrival; record what a from-scratch run would.
  for (int e : new_edges) {
    const RankedEdge& ed = inst_.edge(e);
    int k = std::min(old_became(ed.applicant), old_became(ed.post));
    if (k < start) run.rec.edge_records[e] = {k, DeleteCause::higher_rank};
  }

  // State at the end of stage start-1: the reduced graph rebuilt from the
  // kept records, inserted in the order a from-scratch run would have, and
  // the old matching restricted to earlier ranks.
  std::vector<int> init_edges;
  for (int e = 0; e < inst_.edge_slots(); ++e) {
    if (!inst_.edge_alive(e)) continue;
    if (inst_.edge(e).rank >= start) continue;
    if (run.rec.edge_records[e].deleted_at < start) continue;
    init_edges.push_back(e);
  }
  std::sort(init_edges.begin(), init_edges.end(), [&](int x, int y) {
    return std::pair(inst_.edge(x).rank, x) < std::pair(inst_.edge(y).rank, y);
  });
  run.insert_edges(init_edges);

  std::vector<std::vector<std::pair<int, int>>> old_pairs_by_rank(r_new + 1);
  for (const MatchedPair& pr : old_matching.pairs) {
    if (!inst_.vertex_alive(pr.applicant) || !inst_.vertex_alive(pr.post))
      continue;
    auto e = inst_.find_edge(pr.applicant, pr.post);
    if (!e) continue;
    int rank = inst_.edge(*e).rank;
    if (rank < start) {
      if (!run.g.in_graph[*e])
        throw std::logic_error("internal: kept matched edge left the graph");
      run.mate[pr.applicant] = pr.post;
      run.mate[pr.post] = pr.applicant;
    } else if (rank <= r_new) {
      old_pairs_by_rank[rank].push_back({pr.applicant, pr.post});
    }
  }

  scratch_ = {};
  for (int v = 0; v < inst_.vertex_slots(); ++v)
    if (inst_.vertex_alive(v) &&
        run.rec.vertex_records[v].became_at != k_no_stage)
      scratch_.settled.insert(v);

  UpdateReport rep;
  rep.old_signature = old_sig;

  for (int stage = start; stage <= r_new; ++stage) {
    ++rep.stages_touched;

    std::vector<int> add = run.pending_stage_edges(stage);
    for (int e : add) {
      const RankedEdge& ed = inst_.edge(e);
      if (scratch_.settled.count(ed.applicant) ||
          scratch_.settled.count(ed.post))
        throw std::logic_error("internal: edge re-enters on a settled vertex");
      if (e < static_cast<int>(old_store.edge_records.size())) {
        const EdgeStageRecord& orec = old_store.edge_records[e];
        if (orec.cause == DeleteCause::higher_rank &&
            orec.deleted_at < stage &&
            !scratch_.reeligible.count(ed.applicant) &&
            !scratch_.reeligible.count(ed.post))
          throw std::logic_error(
              "internal: restored edge without a re-eligible endpoint");
      }
    }
    run.insert_edges(add);

    for (auto [a, p] : old_pairs_by_rank[stage]) {
      if (run.mate[a] != -1 || run.mate[p] != -1) continue;
      auto e = inst_.find_edge(a, p);
      if (!e || !run.g.in_graph[*e])
        throw std::logic_error("internal: compatible old pair has no edge");
      run.mate[a] = p;
      run.mate[p] = a;
    }

    int augs = run.augment_to_maximum();
    if (augs > 1)
      throw std::logic_error(
          "internal: more than one augmenting path in one stage");
    rep.augmentations += augs;
    max_stage_augmentations_ = std::max(max_stage_augmentations_, augs);

    run.classify_now();

    for (int v = 0; v < inst_.vertex_slots(); ++v) {
      if (!inst_.vertex_alive(v)) continue;
      if (run.labels[v] == Label::even) {
        if (old_became(v) <= stage && !scratch_.settled.count(v))
          scratch_.reeligible.insert(v);
      } else {
        scratch_.settled.insert(v);
        scratch_.reeligible.erase(v);
      }
    }

    run.apply_stage_rules(stage);
  }

  if (start <= r_new && r_new > 0) run.final_cleanup(r_new);

  cur_ = detail::export_result(run);

  rep.new_signature = cur_.signature;
  int shared = std::min(static_cast<int>(old_store.edge_records.size()),
                        inst_.edge_slots());
  for (int e = 0; e < inst_.edge_slots(); ++e) {
    if (!inst_.edge_alive(e)) continue;
    int new_del = cur_.store.edge_records[e].deleted_at;
    if (e < shared) {
      int old_del = old_store.edge_records[e].deleted_at;
      if (new_del < old_del) ++rep.edges_deleted;
      else if (new_del > old_del) ++rep.edges_restored;
    } else if (new_del != k_no_stage) {
      ++rep.edges_deleted;
    }
  }
  return rep;
}

std::string Operation::to_string() const {
  switch (kind) {
    case Kind::add_vertex: {
      std::string out = "addv " + name + " " +
                        (side == Side::applicant ? "A" : "P") + " :";
      for (std::size_t i = 0; i < neighbors.size(); ++i) {
        out += i ? "," : " ";
        out += neighbors[i].name + ":" + std::to_string(neighbors[i].rank);
      }
      return out;
    }
    case Kind::delete_vertex:
      return "delv " + name;
    case Kind::add_edge:
      return "adde " + name + " " + post + " " + std::to_string(rank);
    default:
      return "dele " + name + " " + post;
  }
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

int parse_rank(const std::string& s, int line_no) {
  try {
    std::size_t pos = 0;
    int r = std::stoi(s, &pos);
    if (pos != s.size() || r < 1) throw std::invalid_argument("");
    return r;
  } catch (...) {
    throw ParseError(line_no, "bad rank '" + s + "'");
  }
}

}  // namespace

std::vector<Operation> parse_op_log(std::string_view text) {
  std::vector<Operation> ops;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::vector<std::string> toks = split_ws(line);
    if (toks.empty()) continue;

    Operation op;
    if (toks[0] == "addv") {
      op.kind = Operation::Kind::add_vertex;
      if (toks.size() < 5 || toks[3] != ":")
        throw ParseError(line_no,
                         "expected: addv <name> <A|P> : <nbr>:<rank>,...");
      op.name = toks[1];
      if (toks[2] == "A") op.side = Side::applicant;
      else if (toks[2] == "P") op.side = Side::post;
      else throw ParseError(line_no, "side must be A or P");
      // The neighbor list may contain spaces around commas; rejoin and split.
      std::string list;
      for (std::size_t i = 4; i < toks.size(); ++i) list += toks[i];
      std::size_t pos = 0;
      while (pos <= list.size()) {
        std::size_t comma = list.find(',', pos);
        std::string item = list.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (item.empty()) throw ParseError(line_no, "empty neighbor item");
        std::size_t colon = item.rfind(':');
        if (colon == std::string::npos || colon == 0)
          throw ParseError(line_no, "expected <name>:<rank> in '" + item + "'");
        op.neighbors.push_back({item.substr(0, colon),
                                parse_rank(item.substr(colon + 1), line_no)});
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      if (op.neighbors.empty())
        throw ParseError(line_no, "addv needs at least one neighbor");
    } else if (toks[0] == "delv") {
      op.kind = Operation::Kind::delete_vertex;
      if (toks.size() != 2) throw ParseError(line_no, "expected: delv <name>");
      op.name = toks[1];
    } else if (toks[0] == "adde") {
      op.kind = Operation::Kind::add_edge;
      if (toks.size() != 4)
        throw ParseError(line_no, "expected: adde <applicant> <post> <rank>");
      op.name = toks[1];
      op.post = toks[2];
      op.rank = parse_rank(toks[3], line_no);
    } else if (toks[0] == "dele") {
      op.kind = Operation::Kind::delete_edge;
      if (toks.size() != 3)
        throw ParseError(line_no, "expected: dele <applicant> <post>");
      op.name = toks[1];
      op.post = toks[2];
    } else {
      throw ParseError(line_no, "unknown operation '" + toks[0] + "'");
    }
    ops.push_back(std::move(op));
  }
  return ops;
}

UpdateReport apply(Engine& engine, const Operation& op) {
  switch (op.kind) {
    case Operation::Kind::add_vertex:
      return engine.add_vertex(op.name, op.side, op.neighbors);
    case Operation::Kind::delete_vertex:
      return engine.delete_vertex(op.name);
    case Operation::Kind::add_edge:
      return engine.add_edge(op.name, op.post, op.rank);
    default:
      return engine.delete_edge(op.name, op.post);
  }
}

}  // namespace rmm
