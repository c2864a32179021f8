// Seeded random instances: uniform bipartite edge sampling, with each
// applicant's posts grouped into consecutive rank tiers whose sizes follow a
// geometric coin. Identical parameters always produce an identical instance,
// independent of platform.
#pragma once

#include <cstdint>

#include "rmm/instance.hpp"

namespace rmm {

struct GenParams {
  int applicants = 5;
  int posts = 5;
  int edges = 10;     // clamped to applicants * posts
  int max_rank = 3;   // tier count cap per applicant
  std::uint64_t seed = 1;
  // Chance (out of 256) that the next post starts a new rank tier.
  int tier_break_chance = 128;
};

Instance generate_instance(const GenParams& params);

}  // namespace rmm
