#include "rmm/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace rmm {

namespace {

struct Enumerator {
  const Instance& inst;
  const OracleOptions& opt;
  std::vector<int> applicants;
  std::vector<char> post_used;  // by vertex handle
  std::vector<MatchedPair> current;
  std::vector<int> counts;  // rank histogram of current
  OracleResult result;

  explicit Enumerator(const Instance& in, const OracleOptions& o)
      : inst(in), opt(o) {
    applicants = in.vertices(Side::applicant);
    post_used.assign(in.vertex_slots(), 0);
    counts.assign(in.max_rank(), 0);
  }

  void leaf() {
    ++result.matchings_enumerated;
    Signature sig;
    int top = static_cast<int>(counts.size());
    while (top > 0 && counts[top - 1] == 0) --top;
    sig.counts.assign(counts.begin(), counts.begin() + top);
    auto cmp = compare_signatures(sig, result.best);
    if (cmp == std::strong_ordering::greater) {
      result.best = sig;
      result.witnesses.clear();
      result.witness_cap_hit = false;
    } else if (cmp != std::strong_ordering::equal) {
      return;
    }
    if (static_cast<int>(result.witnesses.size()) < opt.witness_cap) {
      Matching m;
      m.pairs = current;
      m.normalize();
      result.witnesses.push_back(std::move(m));
    } else {
      result.witness_cap_hit = true;
    }
  }

  // Each matching corresponds to exactly one choice vector: every applicant
  // either skips or takes one of its free posts.
  void recurse(std::size_t idx) {
    if (idx == applicants.size()) {
      leaf();
      return;
    }
    int a = applicants[idx];
    recurse(idx + 1);
    for (int e : inst.incident(a)) {
      const RankedEdge& ed = inst.edge(e);
      if (post_used[ed.post]) continue;
      post_used[ed.post] = 1;
      current.push_back({a, ed.post});
      ++counts[ed.rank - 1];
      recurse(idx + 1);
      --counts[ed.rank - 1];
      current.pop_back();
      post_used[ed.post] = 0;
    }
  }
};

}  // namespace

OracleResult brute_force_signature(const Instance& inst,
                                   const OracleOptions& opt) {
  if (inst.vertex_count() > opt.max_vertices)
    throw std::invalid_argument(
        "instance too large for exhaustive enumeration (" +
        std::to_string(inst.vertex_count()) + " > " +
        std::to_string(opt.max_vertices) + " vertices)");
  Enumerator en(inst, opt);
  en.recurse(0);
  return std::move(en.result);
}

RankMaximalityCheck check_rank_maximal(const Instance& inst, const Matching& m,
                                       const OracleOptions& opt) {
  auto violations = validate_matching(inst, m);
  if (!violations.empty())
    throw std::invalid_argument("matching is invalid: " +
                                violations.front().message);
  OracleResult oracle = brute_force_signature(inst, opt);
  RankMaximalityCheck out;
  out.best = oracle.best;
  out.ok = signature_of(inst, m) == oracle.best;
  return out;
}

}  // namespace rmm
