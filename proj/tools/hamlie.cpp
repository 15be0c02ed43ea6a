#include <iostream>

#include <CLI11.hpp>

#include "hamlie/cli.hpp"

int main(int argc, char** argv) {
  hamlie::cli::RunConfig cfg;
  CLI::App app{"Exact checks for sp_2n representations and Shen-Larsson modules over the Hamiltonian Lie algebra"};
  app.require_subcommand(0, 1);

  bool list = false;
  app.add_flag("--list-checks", list, "Print every subcommand and what it verifies");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Rank n of sp_2n")->check(CLI::PositiveNumber);
    sub->add_option("--rep", cfg.rep_spec, "natural | trivial | fundamental:k | sym:k | exterior:k | file:path");
    sub->add_option("--alpha", cfg.alpha, "Comma-separated rationals p/q, length 2n (default 0)");
    sub->add_option("--beta", cfg.beta, "Comma-separated rationals p/q, length 2n (default 0)");
    sub->add_option("--r", cfg.r, "Lattice vector for g1-check, g2-table, claim2-witness");
    sub->add_option("--gamma", cfg.gamma, "Integral shift for shift-iso");
    sub->add_option("--box", cfg.box_radius, "Box radius")->check(CLI::PositiveNumber);
    sub->add_option("--gens", cfg.gen_radius, "Generator radius")->check(CLI::PositiveNumber);
    sub->add_option("--samples", cfg.samples, "Random samples per sweep");
    sub->add_option("--seed", cfg.rng_seed, "RNG seed");
    sub->add_option("--k", cfg.k, "Exterior degree k (0 = all admissible)");
    sub->add_option("--output", cfg.output, "Write the JSON report here");
    sub->add_option("--threads", cfg.threads, "Worker cap (0 = hardware concurrency)");
    sub->add_option("--time-limit", cfg.time_limit, "Stop invariance sweeps after this many seconds");
    sub->add_flag("--quotient", cfg.quotient, "probe: also test the quotient by the trivial line");
  };
  for (const auto& c : hamlie::cli::list_checks()) {
    auto* sub = app.add_subcommand(c.command, c.verifies);
    common(sub);
    if (std::string(c.command) == "submodule-check")
      sub->add_option("kind", cfg.kind, "trivial_line | delta1 | deltak")->required();
    sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
  }

  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& c : hamlie::cli::list_checks()) std::cout << c.command << "\t" << c.verifies << "\n";
    return 0;
  }
  if (cfg.command.empty()) {
    std::cerr << app.help();
    return 2;
  }
  try {
    const auto res = hamlie::cli::run(cfg);
    std::cout << res.summary;
    if (cfg.output.empty() && (res.report.contains("witness") || res.report.contains("representation")))
      std::cout << res.report.dump(2) << "\n";
    return res.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
