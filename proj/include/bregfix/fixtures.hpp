#pragma once

#include "bregfix/convex_set.hpp"
#include "bregfix/legendre.hpp"
#include "bregfix/mappings.hpp"
#include "bregfix/solver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bregfix {

/// A ready-to-run problem with a known limit.
struct Fixture {
  std::string name;
  SolverConfig config;
  std::vector<FixedPointMapping> mappings;
  /// Declared fixed sets of the mappings together with the ambient set.
  std::vector<ConvexSet> fixed_sets;
};

/// [-1e6, 1e6]^d, or [1e-6, 1e6]^d when the geometry lives on the orthant.
ConvexSet default_ambient(const LegendreGeometry& geom, Eigen::Index dim);

/// Declared fixed sets of `mappings`, plus `ambient` unless it is the whole
/// space. Throws DomainViolation if some mapping declares none.
std::vector<ConvexSet> common_fixed_sets(std::span<const FixedPointMapping> mappings, const ConvexSet& ambient);

/// sq_norm in R^2, projections onto {x1 <= 0} and {x2 <= 0}, u = x0 = (1, 1).
/// The limit is the origin.
Fixture two_halfspace_fixture();

/// neg_entropy in R^2, projections onto the unit simplex and the box
/// [0.1, 0.9]^2, u = x0 = (0.7, 0.6); limit certified by reference_limit.
Fixture entropy_simplex_box_fixture();

/// sq_norm in R^dim, `count` random halfspaces <a_i, x> <= b_i with unit a_i
/// and b_i >= 1 (each contains the unit ball), anchor drawn from [-2, 2]^dim
/// outside their intersection; limit certified by reference_limit.
Fixture halfspace_family_fixture(std::uint64_t seed, std::size_t count = 5, Eigen::Index dim = 5);

/// sq_norm in R^3 with three halfspace projections and two affine
/// resolvents whose only common fixed point is (1, -1, 0.5).
Fixture mixed_family_fixture();

/// Runs the fixture with the two-mapping scheme when it has two mappings and
/// the family scheme otherwise.
RunResult run_fixture(const Fixture& fixture);

}  // namespace bregfix
