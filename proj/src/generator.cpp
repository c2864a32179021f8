#include "rmm/generator.hpp"

#include <random>
#include <set>
#include <stdexcept>

namespace rmm {

namespace {

// mt19937_64 output is pinned by the standard; avoiding the distribution
// classes keeps the byte stream identical across standard libraries.
int next_below(std::mt19937_64& rng, int n) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

bool chance(std::mt19937_64& rng, int out_of_256) {
  return static_cast<int>(rng() & 0xff) < out_of_256;
}

}  // namespace

Instance generate_instance(const GenParams& params) {
  if (params.applicants < 0 || params.posts < 0 || params.edges < 0 ||
      params.max_rank < 1)
    throw std::invalid_argument("bad generator parameters");
  std::mt19937_64 rng(params.seed);

  Instance inst;
  std::vector<int> apps, posts;
  for (int i = 0; i < params.applicants; ++i)
    apps.push_back(inst.add_vertex(Side::applicant, "a" + std::to_string(i + 1)));
  for (int i = 0; i < params.posts; ++i)
    posts.push_back(inst.add_vertex(Side::post, "p" + std::to_string(i + 1)));

  long long cap = static_cast<long long>(params.applicants) * params.posts;
  int want = static_cast<int>(std::min<long long>(params.edges, cap));
  if (want > 0 && (params.applicants == 0 || params.posts == 0)) want = 0;

  std::vector<std::vector<int>> chosen(params.applicants);
  std::set<std::pair<int, int>> taken;
  int placed = 0;
  // Give every applicant a first post while the budget lasts, then fill in
  // uniformly.
  for (int i = 0; i < params.applicants && placed < want; ++i) {
    int p = next_below(rng, params.posts);
    chosen[i].push_back(p);
    taken.insert({i, p});
    ++placed;
  }
  while (placed < want) {
    int i = next_below(rng, params.applicants);
    int p = next_below(rng, params.posts);
    if (!taken.insert({i, p}).second) continue;
    chosen[i].push_back(p);
    ++placed;
  }

  for (int i = 0; i < params.applicants; ++i) {
    int rank = 1;
    for (std::size_t k = 0; k < chosen[i].size(); ++k) {
      if (k > 0 && rank < params.max_rank && chance(rng, params.tier_break_chance))
        ++rank;
      inst.add_edge(apps[i], posts[chosen[i][k]], rank);
    }
  }
  return inst;
}

}  // namespace rmm
