#include "bregfix/config.hpp"
#include "bregfix/errors.hpp"
#include "bregfix/experiment.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace bregfix;

// BREGFIX_SEED, when set, replaces the seed from the config.
std::optional<std::uint64_t> seed_from_env() {
  const char* raw = std::getenv("BREGFIX_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  std::uint64_t value = 0;
  const std::string text(raw);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw CLI::ValidationError("BREGFIX_SEED", "expected a nonnegative integer, got '" + text + "'");
  }
  return value;
}

ExperimentSpec load(const std::string& path) {
  ExperimentSpec spec = parse_config(path);
  if (auto seed = seed_from_env()) spec.run.seed = *seed;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bregman projections and Halpern-type fixed-point iterations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_prefix;
  bool audit = false;
  CLI::App* run = app.add_subcommand("run", "Run the solver on a config file");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--out", out_prefix, "Output prefix (overrides run.output)");
  run->add_flag("--audit", audit, "Audit every iteration");

  std::string suite;
  bool sabotage = false;
  CLI::App* verify = app.add_subcommand("verify", "Run a property verification suite");
  verify->add_option("suite", suite, "geometry, metrics, projection, mappings, solver or all")->required();
  verify->add_flag("--sabotage-conjugate", sabotage)->group("");

  std::string grid_path;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a schedule grid concurrently");
  sweep->add_option("--config", config_path, "Experiment config (JSON)")->required();
  sweep->add_option("--grid", grid_path, "Parameter grid (JSON)")->required();
  sweep->add_option("--out", out_prefix, "Output prefix (overrides run.output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code::kUsage;
  }

  try {
    if (*verify) {
      const std::uint64_t seed = seed_from_env().value_or(0x5eed);
      return cmd_verify(suite, seed, sabotage, std::cout, std::cerr);
    }

    ExperimentSpec spec = load(config_path);
    if (!out_prefix.empty()) spec.run.output = out_prefix;
    if (*run) {
      if (audit) spec.run.audit = true;
      return cmd_run(spec, std::cout, std::cerr);
    }
    SweepGrid grid;
    try {
      grid = parse_grid(grid_path);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return exit_code::kUsage;
    }
    return cmd_sweep(spec, grid, std::cout, std::cerr);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_code::kConfig;
  } catch (const SchemaError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_code::kConfig;
  } catch (const DimensionMismatch& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_code::kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::kFailure;
  }
}
