// Consistency checks between the maintained state and a from-scratch solve.
#pragma once

#include <optional>
#include <string>

#include "rmm/engine.hpp"

namespace rmm {

// Re-solves the engine's instance and compares signature, records, and every
// stage's reduced graph and labels. Returns a description of the first
// difference, or nothing when the states agree exactly.
std::optional<std::string> diff_against_fresh_solve(const Engine& engine);

}  // namespace rmm
