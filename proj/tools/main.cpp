#include <iostream>

#include "CLI11.hpp"
#include "rmm/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Rank-maximal matchings on ranked bipartite instances, "
               "maintained under dynamic updates"};
  app.require_subcommand(1);

  rmm::SolveCmd solve_cmd;
  auto* solve = app.add_subcommand(
      "solve", "Solve an instance and print the matching");
  solve->add_option("instance", solve_cmd.instance_path, "instance file")
      ->required();
  solve->add_option("--store", solve_cmd.store_out,
                    "write the preprocessing records to this file");
  solve->add_flag("--porcelain", solve_cmd.porcelain, "terse stable output");

  rmm::UpdateCmd update_cmd;
  auto* update = app.add_subcommand(
      "update", "Apply an operation log to an instance");
  update->add_option("instance", update_cmd.instance_path, "instance file")
      ->required();
  update->add_option("ops", update_cmd.ops_path, "operation log file")
      ->required();
  update->add_option("--store", update_cmd.store_out,
                     "write the final records to this file");
  update->add_flag("--porcelain", update_cmd.porcelain, "terse stable output");

  rmm::VerifyCmd verify_cmd;
  auto* verify = app.add_subcommand(
      "verify", "Re-check an operation log against recomputation");
  verify->add_option("instance", verify_cmd.instance_path, "instance file")
      ->required();
  verify->add_option("ops", verify_cmd.ops_path, "operation log file")
      ->required();
  verify->add_flag("--with-oracle", verify_cmd.with_oracle,
                   "also check each signature exhaustively (small instances)");
  verify->add_option("--oracle-limit", verify_cmd.oracle_limit,
                     "vertex cap for the exhaustive check");

  rmm::BenchCmd bench_cmd;
  auto* bench = app.add_subcommand(
      "bench", "Compare dynamic updates against from-scratch solves");
  bench->add_option("--grid", bench_cmd.grid,
                    "comma-separated n:m:r points");
  bench->add_option("--trials", bench_cmd.trials, "trials per point");
  bench->add_option("--seed", bench_cmd.seed, "generator seed");

  rmm::GenCmd gen_cmd;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--applicants", gen_cmd.applicants, "applicant count");
  gen->add_option("--posts", gen_cmd.posts, "post count");
  gen->add_option("--edges", gen_cmd.edges, "edge count");
  gen->add_option("--max-rank", gen_cmd.max_rank, "rank tier cap");
  gen->add_option("--seed", gen_cmd.seed, "generator seed");
  gen->add_option("--out", gen_cmd.out_path, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) return rmm::cmd_solve(solve_cmd, std::cout, std::cerr);
  if (update->parsed()) return rmm::cmd_update(update_cmd, std::cout, std::cerr);
  if (verify->parsed()) return rmm::cmd_verify(verify_cmd, std::cout, std::cerr);
  if (bench->parsed()) return rmm::cmd_bench(bench_cmd, std::cout, std::cerr);
  return rmm::cmd_gen(gen_cmd, std::cout, std::cerr);
}
