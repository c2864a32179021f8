// Shared test utilities: name-based lookups so expectations can be written
// against vertex names instead of handles, plus a random operation generator
// for fuzzing the dynamic engine.
#pragma once

#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rmm/engine.hpp"
#include "rmm/generator.hpp"
#include "rmm/instance.hpp"
#include "rmm/solver.hpp"

namespace rmm::test {

inline std::string data_path(const std::string& file) {
  return std::string(TEST_DATA_DIR) + "/" + file;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline int handle(const Instance& inst, const std::string& name) {
  auto v = inst.find_vertex(name);
  if (!v) throw std::runtime_error("no vertex named " + name);
  return *v;
}

inline Matching matching_of(
    const Instance& inst,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  Matching m;
  for (const auto& [a, p] : pairs)
    m.pairs.push_back({handle(inst, a), handle(inst, p)});
  m.normalize();
  return m;
}

// Handle-free view of a matching, comparable across instances that number
// their vertices differently.
inline std::set<std::pair<std::string, std::string>> named_pairs(
    const Instance& inst, const Matching& m) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& pr : m.pairs)
    out.insert({inst.name(pr.applicant), inst.name(pr.post)});
  return out;
}

inline Label label_of(const Instance& inst, const std::vector<Label>& labels,
                      const std::string& name) {
  return labels.at(static_cast<std::size_t>(handle(inst, name)));
}

inline VertexStageRecord vertex_record(const Instance& inst,
                                       const PreprocessStore& store,
                                       const std::string& name) {
  return store.vertex_records.at(static_cast<std::size_t>(handle(inst, name)));
}

inline EdgeStageRecord edge_record(const Instance& inst,
                                   const PreprocessStore& store,
                                   const std::string& a, const std::string& p) {
  auto e = inst.find_edge(handle(inst, a), handle(inst, p));
  if (!e) throw std::runtime_error("no edge " + a + "-" + p);
  return store.edge_records.at(static_cast<std::size_t>(*e));
}

inline bool edge_in(const Instance& inst, const std::vector<int>& edge_slots,
                    const std::string& a, const std::string& p) {
  auto e = inst.find_edge(handle(inst, a), handle(inst, p));
  if (!e) return false;
  for (int slot : edge_slots)
    if (slot == *e) return true;
  return false;
}

// Random engine operations that stay applicable to the current instance. The
// vertex budget keeps fresh solves and oracle runs cheap.
struct FuzzParams {
  int max_vertices = 14;
  int max_rank = 4;
  int max_neighbors = 3;
};

inline std::optional<Operation> random_op(std::mt19937_64& rng,
                                          const Instance& inst,
                                          int& name_counter,
                                          const FuzzParams& fp = {}) {
  auto pick = [&rng](int n) {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  };
  std::vector<int> applicants = inst.vertices(Side::applicant);
  std::vector<int> posts = inst.vertices(Side::post);
  std::vector<int> edges = inst.edge_ids();

  for (int attempt = 0; attempt < 32; ++attempt) {
    switch (pick(10)) {
      case 0:
      case 1: {  // add a vertex with 1..max_neighbors fresh edges
        if (inst.vertex_count() >= fp.max_vertices) break;
        Operation op;
        op.kind = Operation::Kind::add_vertex;
        op.side = pick(2) == 0 ? Side::applicant : Side::post;
        op.name = (op.side == Side::applicant ? "x" : "y") +
                  std::to_string(++name_counter);
        const auto& others = op.side == Side::applicant ? posts : applicants;
        if (others.empty()) {
          op.neighbors.clear();  // isolated vertex, still a legal update
        } else {
          int want = 1 + pick(fp.max_neighbors);
          std::set<int> chosen;
          while (static_cast<int>(chosen.size()) < want &&
                 static_cast<int>(chosen.size()) < static_cast<int>(others.size()))
            chosen.insert(others[static_cast<std::size_t>(pick(
                static_cast<int>(others.size())))]);
          for (int v : chosen)
            op.neighbors.push_back({inst.name(v), 1 + pick(fp.max_rank)});
        }
        return op;
      }
      case 2:
      case 3: {  // delete a vertex
        if (inst.vertex_count() <= 2) break;
        std::vector<int> all = inst.vertices();
        Operation op;
        op.kind = Operation::Kind::delete_vertex;
        op.name = inst.name(all[static_cast<std::size_t>(
            pick(static_cast<int>(all.size())))]);
        return op;
      }
      case 4:
      case 5:
      case 6: {  // add an edge between existing vertices
        if (applicants.empty() || posts.empty()) break;
        int a = applicants[static_cast<std::size_t>(
            pick(static_cast<int>(applicants.size())))];
        int p = posts[static_cast<std::size_t>(
            pick(static_cast<int>(posts.size())))];
        if (inst.find_edge(a, p)) break;
        Operation op;
        op.kind = Operation::Kind::add_edge;
        op.name = inst.name(a);
        op.post = inst.name(p);
        op.rank = 1 + pick(fp.max_rank);
        return op;
      }
      default: {  // delete an edge
        if (edges.empty()) break;
        const RankedEdge& e = inst.edge(
            edges[static_cast<std::size_t>(pick(static_cast<int>(edges.size())))]);
        Operation op;
        op.kind = Operation::Kind::delete_edge;
        op.name = inst.name(e.applicant);
        op.post = inst.name(e.post);
        return op;
      }
    }
  }
  return std::nullopt;
}

}  // namespace rmm::test
