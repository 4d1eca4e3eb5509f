#pragma once

#include "bregfix/coordinates.hpp"
#include "bregfix/legendre.hpp"

#include <cstdint>

namespace bregfix {

/// D_f(y, x) = f(y) - f(x) - <grad f(x), y - x>.
///
/// Tiny negative values produced by cancellation are clamped to 0. The
/// clamping floor is 1e-12 scaled by the magnitude of the terms being
/// cancelled; anything below it raises NumericalConsistency.
double bregman_distance(const LegendreGeometry& geom, const Point& y, const Point& x);

/// V_f(x, x*) = f(x) - <x, x*> + f*(x*) = D_f(x, grad f*(x*)).
double v_function(const LegendreGeometry& geom, const Point& x, const DualPoint& xstar);

/// V_f(x, x* + y*) - V_f(x, x*) - <y*, grad f*(x*) - x>; nonnegative by the
/// subgradient inequality for f*.
double v_perturbation_gap(const LegendreGeometry& geom, const Point& x, const DualPoint& xstar,
                          const DualPoint& ystar);

struct ModulusOptions {
  int samples = 64;
  int refinement_rounds = 60;
  std::uint64_t seed = 0x5eed;
};

/// Sampled estimate of the modulus of total convexity
///   inf { D_f(y, x) : |y - x| = t }.
///
/// Random directions on the sphere of radius t are scored and the best one
/// is refined by shrinking random rotations. The estimate is an upper bound
/// of the true infimum; it is a diagnostic, not an exact value. Throws
/// DomainViolation when no sampled sphere point lies in dom f.
double total_convexity_modulus(const LegendreGeometry& geom, const Point& x, double t,
                               const ModulusOptions& options = {});

}  // namespace bregfix
