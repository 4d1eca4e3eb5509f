#pragma once

#include "bregfix/convex_set.hpp"
#include "bregfix/coordinates.hpp"
#include "bregfix/mappings.hpp"
#include "bregfix/schedule.hpp"
#include "bregfix/solver.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bregfix {

struct GeometrySpec {
  std::string name;
  Eigen::Index dim = 0;
  /// Exponent for p_power; ignored otherwise.
  double p = 2.0;

  bool operator==(const GeometrySpec&) const = default;
};

struct MappingSpec {
  enum class Kind { Identity, Projection, Resolvent };

  Kind kind = Kind::Identity;
  /// Projection target.
  ConvexSet set;
  /// Resolvent data: A(z) = M z + q with step size `step`.
  Eigen::MatrixXd m;
  Eigen::VectorXd q;
  double step = 1.0;

  bool operator==(const MappingSpec& other) const;
};

struct RunSpec {
  std::size_t max_iter = 200000;
  double residual_tol = 1e-8;
  bool audit = false;
  /// Seeds probe sampling only; the iteration is deterministic.
  std::uint64_t seed = 0x5eed;
  std::string output = "bregfix_run";
  /// "auto" picks the two-mapping scheme for exactly two mappings.
  std::string scheme = "auto";
  std::size_t trace_every = 1;

  bool operator==(const RunSpec&) const = default;
};

struct ExperimentSpec {
  GeometrySpec geometry;
  ConvexSet ambient;
  std::vector<MappingSpec> mappings;
  ScheduleSet schedules;
  Point anchor;
  Point start;
  RunSpec run;
  /// Known limit; computed and certified at build time when absent.
  std::optional<Point> reference;

  bool operator==(const ExperimentSpec&) const = default;
};

/// Throws ParseError (with line and column) on malformed text, SchemaError
/// naming the offending key, or DimensionMismatch.
ExperimentSpec parse_config_text(std::string_view text);
ExperimentSpec parse_config(const std::filesystem::path& path);

/// Canonical form: every key present, fixed key order, shortest
/// round-tripping number formatting.
std::string to_json(const ExperimentSpec& spec);

struct BuiltExperiment {
  SolverConfig config;
  std::vector<FixedPointMapping> mappings;
  bool use_two_scheme = false;
  /// Variational residual of the computed reference, when one was computed.
  std::optional<double> reference_residual;
  std::vector<std::string> warnings;
};

/// Instantiates geometry, sets and mappings. A reference limit that cannot
/// be computed or certified becomes a warning, not an error.
BuiltExperiment build(const ExperimentSpec& spec);

}  // namespace bregfix
