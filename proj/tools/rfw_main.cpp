// Command-line front end: rfw solve|compare|check-rates --config <path>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "rfw/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Restarted away-step Frank-Wolfe experiments"};
  app.require_subcommand(1);

  std::filesystem::path config;
  auto add = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "experiment file")->required()->check(CLI::ExistingFile);
    return sub;
  };
  auto* solve = add("solve", "run one solver and write run.csv and summary.json");
  auto* compare = add("compare", "run several solver variants and write compare.csv");
  auto* rates = add("check-rates", "fit convergence rates and check theoretical bounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (solve->parsed()) return rfw::cmd_solve(config);
  if (compare->parsed()) return rfw::cmd_compare(config);
  if (rates->parsed()) return rfw::cmd_check_rates(config);
  return 1;
}
