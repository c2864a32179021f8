// Exhaustive reference for small instances: enumerates every matching once
// and keeps the lexicographically best signature with its witnesses. Kept
// deliberately independent of the solver so the two can check each other.
#pragma once

#include <vector>

#include "rmm/instance.hpp"

namespace rmm {

struct OracleOptions {
  // Refuses instances with more than this many vertices (both sides).
  int max_vertices = 14;
  // Stop collecting witnesses beyond this many; the flag below reports it.
  int witness_cap = 1000;
};

struct OracleResult {
  Signature best;
  std::vector<Matching> witnesses;  // every best matching, up to the cap
  bool witness_cap_hit = false;
  long long matchings_enumerated = 0;
};

OracleResult brute_force_signature(const Instance& inst,
                                   const OracleOptions& opt = {});

struct RankMaximalityCheck {
  bool ok = false;
  Signature best;  // the optimal signature, for the failure message
};

// Checks a valid matching's signature against the enumerated optimum.
RankMaximalityCheck check_rank_maximal(const Instance& inst, const Matching& m,
                                       const OracleOptions& opt = {});

}  // namespace rmm
