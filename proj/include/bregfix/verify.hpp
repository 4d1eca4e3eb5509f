#pragma once

#include "bregfix/legendre.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bregfix {

/// Outcome of one checked property: the worst measured value and the bound
/// it was compared against.
struct PropertyResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  /// "<=" when measured must not exceed threshold, ">=" otherwise.
  std::string relation = "<=";
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyResult> results;
  double seconds = 0.0;

  [[nodiscard]] bool passed() const;
  /// Names of failed properties.
  [[nodiscard]] std::vector<std::string> failures() const;
};

/// sq_norm, p_power(3) and neg_entropy.
std::vector<GeometryPtr> standard_geometries();

SuiteReport verify_geometry(std::span<const GeometryPtr> geometries, std::uint64_t seed);
SuiteReport verify_geometry(std::uint64_t seed);
SuiteReport verify_metrics(std::uint64_t seed);
SuiteReport verify_projection(std::uint64_t seed);
SuiteReport verify_mappings(std::uint64_t seed);
SuiteReport verify_solver(std::uint64_t seed);

/// Known suite names: geometry, metrics, projection, mappings, solver, all.
bool is_suite_name(std::string_view suite);

/// Runs one suite (or all), printing one line per property.
std::vector<SuiteReport> run_suites(std::string_view suite, std::uint64_t seed, std::ostream& out,
                                    std::span<const GeometryPtr> geometry_override = {});

void print_report(const SuiteReport& report, std::ostream& out);

/// Fault injection: a geometry whose grad f* is multiplied by `factor`.
/// Used as a negative control for the geometry suite.
GeometryPtr sabotage_conjugate_gradient(GeometryPtr base, double factor = 2.0);

}  // namespace bregfix
