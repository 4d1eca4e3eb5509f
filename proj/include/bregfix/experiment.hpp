#pragma once

#include "bregfix/config.hpp"
#include "bregfix/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bregfix {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kIterBudget = 2;
inline constexpr int kAuditViolation = 3;
inline constexpr int kIoError = 4;
inline constexpr int kUsage = 64;
inline constexpr int kConfig = 65;
}  // namespace exit_code

/// Header of the trace CSV for `mapping_count` residual columns.
std::string trace_header(std::size_t mapping_count);

/// Runs the solver described by `spec` and writes <output>.trace.csv,
/// <output>.summary and <output>.config.json.
int cmd_run(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);

/// Runs a verification suite; `sabotage` swaps every geometry for one with
/// a wrong conjugate gradient.
int cmd_verify(std::string_view suite, std::uint64_t seed, bool sabotage, std::ostream& out, std::ostream& err);

/// Schedule grid for sweeps. Alpha choices are the power exponents followed
/// by the constants; an empty alpha or beta axis keeps the config value.
struct SweepGrid {
  std::vector<double> alpha_exponent;
  std::vector<double> alpha_constant;
  std::vector<double> beta;

  [[nodiscard]] bool empty() const { return alpha_exponent.empty() && alpha_constant.empty() && beta.empty(); }
};

/// Throws ParseError or SchemaError.
SweepGrid parse_grid_text(std::string_view text);
SweepGrid parse_grid(const std::filesystem::path& path);

/// Runs every grid cell concurrently and writes <output>.sweep.csv with one
/// row per cell in grid order. Exit 64 on an empty grid.
int cmd_sweep(const ExperimentSpec& spec, const SweepGrid& grid, std::ostream& out, std::ostream& err);

}  // namespace bregfix
