#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "rydkick/errors.hpp"
#include "rydkick/pipeline.hpp"

namespace {

struct CliOptions {
  std::string config;
  std::string out;
  long seed = -1;
  bool has_seed = false;
  bool strict = false;
};

void add_common(CLI::App *cmd, CliOptions &opt) {
  cmd->add_option("--config", opt.config, "scenario file (INI)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", opt.seed, "override [scan] seed")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", opt.out, "override [output] directory");
  cmd->add_flag("--strict", opt.strict,
                "treat accuracy warnings as errors");
}

rydkick::RunContext make_context(const CLI::App *cmd, const CliOptions &opt) {
  rydkick::RunContext ctx;
  ctx.scenario = rydkick::load_scenario(opt.config);
  if (cmd->count("--seed") > 0)
    ctx.scenario.seed = static_cast<uint64_t>(opt.seed);
  ctx.out_dir = cmd->count("--out") > 0 ? opt.out
                                        : ctx.scenario.out_directory;
  ctx.strict = opt.strict;
  return ctx;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Rydberg wave-packet impulse and coherence toolkit"};
  app.require_subcommand(1);

  CliOptions opt;
  CLI::App *basis =
      app.add_subcommand("basis", "solve the bound basis and report radial "
                                  "diagnostics");
  CLI::App *kick = app.add_subcommand(
      "kick", "assemble the impulse operator and check its unitarity");
  CLI::App *scan = app.add_subcommand(
      "scan", "simulate a reference-delay scan and extract pair coherences");
  CLI::App *hcp_scan = app.add_subcommand(
      "hcp-scan", "sweep the impulse time; fit pair amplitude and phase at "
                  "each point against a no-kick reference");
  CLI::App *analyze = app.add_subcommand(
      "analyze", "recompute correlations and fits from a stored ensemble");
  for (CLI::App *cmd : {basis, kick, scan, hcp_scan, analyze})
    add_common(cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  const CLI::App *cmd = app.get_subcommands().front();
  try {
    rydkick::RunContext ctx = make_context(cmd, opt);
    if (cmd == basis)
      rydkick::run_basis(ctx);
    else if (cmd == kick)
      rydkick::run_kick(ctx);
    else if (cmd == scan)
      rydkick::run_scan(ctx);
    else if (cmd == hcp_scan)
      rydkick::run_hcp_scan(ctx);
    else
      rydkick::run_analyze(ctx);
  } catch (const rydkick::ConfigError &e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const rydkick::Error &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
  return 0;
}
