// Implementations behind the CLI subcommands, callable directly so tests can
// drive them without a process boundary. Exit codes: 0 success, 1 a
// verification or internal consistency failure, 2 bad input.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace rmm {

inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failure = 1;
inline constexpr int exit_input_error = 2;

struct SolveCmd {
  std::string instance_path;
  std::string store_out;  // optional: write the record store here
  bool porcelain = false;
};

struct UpdateCmd {
  std::string instance_path;
  std::string ops_path;
  std::string store_out;
  bool porcelain = false;
};

struct VerifyCmd {
  std::string instance_path;
  std::string ops_path;
  bool with_oracle = false;  // also check signatures exhaustively
  int oracle_limit = 14;
};

struct BenchCmd {
  std::string grid = "1000:5000:2,1000:5000:4";  // n:m:r per point
  int trials = 5;
  std::uint64_t seed = 1;
};

struct GenCmd {
  int applicants = 5;
  int posts = 5;
  int edges = 10;
  int max_rank = 3;
  std::uint64_t seed = 1;
  std::string out_path;  // empty: stdout
};

int cmd_solve(const SolveCmd& cmd, std::ostream& out, std::ostream& err);
int cmd_update(const UpdateCmd& cmd, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyCmd& cmd, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchCmd& cmd, std::ostream& out, std::ostream& err);
int cmd_gen(const GenCmd& cmd, std::ostream& out, std::ostream& err);

// One benchmark grid point: mean wall time of a single dynamic update (an
// edge deletion or re-insertion) against a from-scratch solve.
struct BenchRow {
  int applicants = 0;
  int posts = 0;
  int edges = 0;
  int max_rank = 0;
  double update_us = 0;
  double solve_us = 0;
};

BenchRow run_bench_point(int applicants, int posts, int edges, int max_rank,
                         int trials, std::uint64_t seed);

}  // namespace rmm
