// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ddesim/harness/commands.hpp"
#include "ddesim/harness/config.hpp"

namespace {

using Command = std::function<ddesim::harness::CommandResult(
    const ddesim::harness::RunConfig&, std::ostream&, std::ostream&)>;

struct CommandInfo {
  Command run;
  const char* default_out;
  const char* help;
};

}  // namespace

int main(int argc, char** argv) {
  namespace h = ddesim::harness;
  const std::map<std::string, CommandInfo> commands{
      {"spectrum", {h::cmd_spectrum, "spectrum.csv", "multipliers of T(r,s) and a stability verdict"}},
      {"converge", {h::cmd_converge, "convergence.csv", "dominant-multiplier error against the registered target over N_list"}},
      {"chart", {h::cmd_chart, "chart.csv", "dominant modulus over a two-parameter grid"}},
      {"floquet", {h::cmd_floquet, "spectrum.csv", "Floquet multipliers of the monodromy operator"}},
      {"solve", {h::cmd_solve, "solution.csv", "collocation solution of the initial value problem"}},
  };

  CLI::App app{"Spectra of linear delay differential equations by pseudospectral collocation"};
  app.require_subcommand(1);
  std::string config_path;
  int n = 0;
  int m = 0;
  std::string out_path;
  bool fail_on_unstable = false;

  for (const auto& [name, info] : commands) {
    CLI::App* sub = app.add_subcommand(name, info.help);
    sub->add_option("--config", config_path, "configuration file")->required();
    sub->add_option("--N", n, "collocation degree (overrides the config)")->check(CLI::PositiveNumber);
    sub->add_option("--M", m, "history degree (overrides the config)")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_path, std::string("output CSV, '-' for stdout (default ") + info.default_out + ")");
    sub->add_flag("--fail-on-unstable", fail_on_unstable, "exit with status 2 on an unstable verdict");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const CommandInfo& info = commands.at(name);
  try {
    h::RunConfig cfg = h::load_config(config_path);
    if (n > 0) cfg.n = n;
    if (m > 0) cfg.m = m;
    if (out_path.empty()) out_path = info.default_out;

    h::CommandResult result;
    if (out_path == "-") {
      result = info.run(cfg, std::cout, std::cerr);
    } else {
      std::ostringstream csv;
      result = info.run(cfg, csv, std::cout);
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw ddesim::InvalidArgument("cannot write '" + out_path + "'");
      file << csv.str();
      if (!file) throw ddesim::InvalidArgument("failed writing '" + out_path + "'");
    }
    if (fail_on_unstable && result.verdict == ddesim::Verdict::unstable) return 2;
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
