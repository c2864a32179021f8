#include <set>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "rmm/generator.hpp"
#include "rmm/solver.hpp"

using namespace rmm;
using namespace rmm::test;

TEST_CASE("solve works the cascade instance stage by stage") {
  Instance inst = parse_instance(read_file(data_path("cascade.txt")));
  REQUIRE(inst.edge_count() == 20);
  REQUIRE(inst.max_rank() == 7);

  SolveResult res = solve(inst);

  CHECK(named_pairs(inst, res.matching) ==
        std::set<std::pair<std::string, std::string>>{{"a1", "p1"},
                                                      {"a2", "p2"},
                                                      {"a3", "p3"},
                                                      {"a4", "p4"},
                                                      {"a5", "p5"},
                                                      {"a6", "p6"},
                                                      {"a7", "p7"}});
  CHECK(res.signature == Signature{{4, 0, 1, 0, 1, 0, 1}});
  CHECK(res.store.final_r == 7);
  CHECK(res.store.stage_counts == std::vector<int>{4, 0, 1, 0, 1, 0, 1});

  // First stage the vertex stopped being even, and what it became.
  auto vrec = [&](const std::string& name) {
    return vertex_record(inst, res.store, name);
  };
  CHECK(vrec("p5") == VertexStageRecord{1, Label::odd});
  for (const char* name : {"a1", "p1", "a6", "p6", "a7", "p7"})
    CHECK(vrec(name) == VertexStageRecord{1, Label::unreachable});
  CHECK(vrec("a2") == VertexStageRecord{3, Label::unreachable});
  CHECK(vrec("p2") == VertexStageRecord{3, Label::unreachable});
  CHECK(vrec("a3") == VertexStageRecord{5, Label::unreachable});
  CHECK(vrec("p3") == VertexStageRecord{5, Label::unreachable});
  CHECK(vrec("a4") == VertexStageRecord{7, Label::unreachable});
  CHECK(vrec("p4") == VertexStageRecord{7, Label::unreachable});
  CHECK(vrec("a5") == VertexStageRecord{7, Label::unreachable});
  CHECK(vrec("p8") == VertexStageRecord{});  // even throughout

  // Stage-1 pruning removes every higher-rank edge at the six vertices that
  // stopped being even, stage 3 and 5 continue the same way.
  auto erec = [&](const std::string& a, const std::string& p) {
    return edge_record(inst, res.store, a, p);
  };
  for (auto [a, p] : std::vector<std::pair<std::string, std::string>>{
           {"a2", "p1"}, {"a3", "p1"}, {"a4", "p1"}, {"a6", "p8"},
           {"a3", "p6"}, {"a4", "p6"}, {"a4", "p7"}})
    CHECK(erec(a, p) == EdgeStageRecord{1, DeleteCause::higher_rank});
  CHECK(erec("a3", "p2") == EdgeStageRecord{3, DeleteCause::higher_rank});
  CHECK(erec("a4", "p2") == EdgeStageRecord{3, DeleteCause::higher_rank});
  CHECK(erec("a2", "p5") == EdgeStageRecord{3, DeleteCause::odd_prune});
  CHECK(erec("a4", "p3") == EdgeStageRecord{5, DeleteCause::higher_rank});
  CHECK(erec("a3", "p5") == EdgeStageRecord{5, DeleteCause::odd_prune});
  for (auto [a, p] : std::vector<std::pair<std::string, std::string>>{
           {"a1", "p1"}, {"a2", "p2"}, {"a3", "p3"}, {"a4", "p4"},
           {"a4", "p5"}, {"a5", "p5"}, {"a6", "p6"}, {"a7", "p7"}})
    CHECK(erec(a, p) == EdgeStageRecord{});
}

TEST_CASE("stage_matching restricts the result to a stage prefix") {
  Instance inst = parse_instance(read_file(data_path("cascade.txt")));
  SolveResult res = solve(inst);

  CHECK(stage_matching(inst, res, 0).size() == 0);
  Matching m1 = stage_matching(inst, res, 1);
  CHECK(named_pairs(inst, m1) ==
        std::set<std::pair<std::string, std::string>>{
            {"a1", "p1"}, {"a5", "p5"}, {"a6", "p6"}, {"a7", "p7"}});
  CHECK(stage_matching(inst, res, 7) == res.matching);
  CHECK_THROWS_AS(stage_matching(inst, res, 8), std::invalid_argument);

  // Each prefix is a maximum matching of its reduced graph with the recorded
  // per-rank counts.
  for (int stage = 0; stage <= res.store.final_r; ++stage) {
    Matching prefix = stage_matching(inst, res, stage);
    CHECK(signature_of(inst, prefix) == res.store.prefix_signature(stage));
    auto edges = reconstruct_reduced_graph(inst, res.store, stage);
    StageGraph g = StageGraph::from_edges(inst, edges);
    MateVector mate = mate_vector(inst, prefix);
    CHECK_FALSE(find_augmenting_path(g, mate).has_value());
  }
}

TEST_CASE("prefix_signature truncates and pads the stage counts") {
  PreprocessStore store;
  store.final_r = 3;
  store.stage_counts = {2, 0, 1};
  CHECK(store.prefix_signature(0) == Signature{{}});
  CHECK(store.prefix_signature(2) == Signature{{2, 0}});
  CHECK(store.prefix_signature(3) == Signature{{2, 0, 1}});
}

TEST_CASE("observer snapshots match the reconstructed reduced graphs") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    GenParams gp;
    gp.applicants = 3 + static_cast<int>(seed % 4);
    gp.posts = 3 + static_cast<int>((seed / 2) % 4);
    gp.edges = 4 + static_cast<int>(seed % 12);
    gp.max_rank = 4;
    gp.seed = seed * 17;
    Instance inst = generate_instance(gp);

    std::vector<StageSnapshot> snaps;
    SolveOptions opt;
    opt.observer = [&](const StageSnapshot& s) { snaps.push_back(s); };
    SolveResult res = solve(inst, opt);

    REQUIRE(static_cast<int>(snaps.size()) == res.store.final_r);
    for (const StageSnapshot& s : snaps) {
      CHECK(s.graph_edges ==
            reconstruct_reduced_graph(inst, res.store, s.stage));
      CHECK(to_matching(inst, s.mate).size() ==
            stage_matching(inst, res, s.stage).size());
    }
  }
}

TEST_CASE("solve is deterministic") {
  Instance inst = parse_instance(read_file(data_path("cascade.txt")));
  SolveResult a = solve(inst);
  SolveResult b = solve(inst);
  CHECK(a.matching == b.matching);
  CHECK(a.signature == b.signature);
  CHECK(a.store == b.store);
}

TEST_CASE("reverse scan may change the matching but nothing else") {
  Instance inst = parse_instance("a1 : p1\na2 : p1\n");
  SolveResult fwd = solve(inst);
  SolveOptions rev_opt;
  rev_opt.reverse_scan = true;
  SolveResult rev = solve(inst, rev_opt);

  CHECK(named_pairs(inst, fwd.matching) ==
        std::set<std::pair<std::string, std::string>>{{"a1", "p1"}});
  CHECK(named_pairs(inst, rev.matching) ==
        std::set<std::pair<std::string, std::string>>{{"a2", "p1"}});
  CHECK(fwd.signature == rev.signature);
  CHECK(fwd.store == rev.store);
}

TEST_CASE("a rank gap leaves its stages empty") {
  Instance inst;
  int a1 = inst.add_vertex(Side::applicant, "a1");
  int a2 = inst.add_vertex(Side::applicant, "a2");
  int p1 = inst.add_vertex(Side::post, "p1");
  inst.add_edge(a1, p1, 1);
  inst.add_edge(a2, p1, 3);

  SolveResult res = solve(inst);
  CHECK(res.signature == Signature{{1, 0, 0}});
  CHECK(res.store.final_r == 3);
  CHECK(res.store.stage_counts == std::vector<int>{1, 0, 0});
  CHECK(named_pairs(inst, res.matching) ==
        std::set<std::pair<std::string, std::string>>{{"a1", "p1"}});
  // In the stage-1 graph the only free vertex a2 is isolated, so the
  // matched pair is unreachable. p1 stops being even all the same, which
  // prunes the rank-3 edge early.
  CHECK(vertex_record(inst, res.store, "p1") ==
        VertexStageRecord{1, Label::unreachable});
  CHECK(edge_record(inst, res.store, "a2", "p1") ==
        EdgeStageRecord{1, DeleteCause::higher_rank});
}

TEST_CASE("solve handles edgeless and empty instances") {
  Instance empty;
  SolveResult res = solve(empty);
  CHECK(res.matching.size() == 0);
  CHECK(res.signature == Signature{{}});
  CHECK(res.store.final_r == 0);

  Instance isolated;
  isolated.add_vertex(Side::applicant, "a1");
  isolated.add_vertex(Side::post, "p1");
  SolveResult res2 = solve(isolated);
  CHECK(res2.matching.size() == 0);
  CHECK(res2.store.vertex_records[0] == VertexStageRecord{});
  CHECK(res2.store.vertex_records[1] == VertexStageRecord{});
}

TEST_CASE("store text round-trips through serialize and parse") {
  Instance inst = parse_instance(read_file(data_path("cascade.txt")));
  SolveResult res = solve(inst);
  std::string text = serialize_store(inst, res.store);
  PreprocessStore parsed = parse_store(inst, text);
  CHECK(parsed == res.store);

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GenParams gp;
    gp.seed = seed;
    gp.edges = 12;
    Instance rnd = generate_instance(gp);
    SolveResult r = solve(rnd);
    CHECK(parse_store(rnd, serialize_store(rnd, r.store)) == r.store);
  }
}

TEST_CASE("parse_store rejects inconsistent text") {
  Instance inst = parse_instance("a1 : p1, p2\na2 : p1\n");
  SolveResult res = solve(inst);
  std::string good = serialize_store(inst, res.store);
  CHECK(parse_store(inst, good) == res.store);

  CHECK_THROWS_AS(parse_store(inst, "C 1\nR 1\n"), ParseError);       // R not first
  CHECK_THROWS_AS(parse_store(inst, "R 2\nC 1\n"), ParseError);       // C arity
  CHECK_THROWS_AS(parse_store(inst, "R 1\n"), ParseError);            // missing C
  CHECK_THROWS_AS(parse_store(inst, "R 1\nC 1\nV zz 1 odd\n"), ParseError);
  CHECK_THROWS_AS(parse_store(inst, "R 1\nC 1\nV p1 1 sideways\n"), ParseError);
  CHECK_THROWS_AS(parse_store(inst, "R 1\nC 1\nV p1 2 odd\n"), ParseError);
  CHECK_THROWS_AS(parse_store(inst, "R 1\nC 1\nV p1 1 odd\nV p1 1 odd\n"),
                  ParseError);                                        // duplicate
  CHECK_THROWS_AS(parse_store(inst, "R 1\nC 1\nE a1 p9 1 1 odd_prune\n"),
                  ParseError);                                        // no edge
  CHECK_THROWS_AS(parse_store(inst, "R 1\nC 1\nE a1 p1 2 1 odd_prune\n"),
                  ParseError);                                        // wrong rank
  CHECK_THROWS_AS(parse_store(inst, "R 1\nC 1\nE a1 p1 1 1 because\n"),
                  ParseError);                                        // bad cause
  // A higher_rank deletion happens strictly before the edge's own stage, the
  // in-graph causes strictly at or after it.
  CHECK_THROWS_AS(parse_store(inst, "R 1\nC 1\nE a1 p1 1 1 higher_rank\n"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_store(inst, "R 2\nC 1 0\nE a1 p2 2 1 odd_prune\n"), ParseError);
  CHECK_THROWS_AS(parse_store(inst, "R 1\nC 1\nX what\n"), ParseError);
}
