#include "bregfix/metrics.hpp"

#include "bregfix/errors.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace bregfix {

namespace {

constexpr double kClampFloor = 1e-12;

double clamp_nonnegative(double value, double scale, const char* what) {
  if (value >= 0.0) return value;
  if (value >= -kClampFloor * std::max(1.0, scale)) return 0.0;
  throw NumericalConsistency(std::string(what) + " is negative (" + std::to_string(value) +
                             "); geometry is inconsistent");
}

}  // namespace

double bregman_distance(const LegendreGeometry& geom, const Point& y, const Point& x) {
  if (y.dim() != x.dim()) throw DomainViolation("bregman_distance: dimension mismatch");
  const double fy = geom.value(y);
  const double fx = geom.value(x);
  const double inner = pairing(y - x, geom.gradient(x));
  const double d = fy - fx - inner;
  return clamp_nonnegative(d, std::abs(fy) + std::abs(fx) + std::abs(inner), "Bregman distance");
}

double v_function(const LegendreGeometry& geom, const Point& x, const DualPoint& xstar) {
  if (x.dim() != xstar.dim()) throw DomainViolation("v_function: dimension mismatch");
  const double fx = geom.value(x);
  const double inner = pairing(x, xstar);
  const double fs = geom.conjugate_value(xstar);
  return clamp_nonnegative(fx - inner + fs, std::abs(fx) + std::abs(inner) + std::abs(fs), "V_f");
}

double v_perturbation_gap(const LegendreGeometry& geom, const Point& x, const DualPoint& xstar,
                          const DualPoint& ystar) {
  const double shifted = v_function(geom, x, xstar + ystar);
  const double base = v_function(geom, x, xstar);
  return shifted - base - pairing(geom.conjugate_gradient(xstar) - x, ystar);
}

double total_convexity_modulus(const LegendreGeometry& geom, const Point& x, double t,
                               const ModulusOptions& options) {
  if (!geom.in_interior(x)) throw DomainViolation("total_convexity_modulus: x outside int dom f");
  if (t < 0.0) throw DomainViolation("total_convexity_modulus: radius must be nonnegative");
  if (t == 0.0) return 0.0;

  const Eigen::Index d = x.dim();
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto random_direction = [&] {
    Eigen::VectorXd v(d);
    do {
      for (Eigen::Index i = 0; i < d; ++i) v[i] = gauss(rng);
    } while (v.norm() == 0.0);
    return Eigen::VectorXd(v / v.norm());
  };
  auto score = [&](const Eigen::VectorXd& dir) {
    const Point y(x.vec() + t * dir);
    if (!geom.in_domain(y)) return std::numeric_limits<double>::infinity();
    return bregman_distance(geom, y, x);
  };

  Eigen::VectorXd best_dir;
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < options.samples; ++s) {
    Eigen::VectorXd dir = random_direction();
    const double v = score(dir);
    if (v < best) {
      best = v;
      best_dir = std::move(dir);
    }
  }
  if (!std::isfinite(best)) throw DomainViolation("total_convexity_modulus: sphere misses dom f");

  // local refinement: perturb the direction, renormalize, keep improvements
  double spread = 0.5;
  for (int round = 0; round < options.refinement_rounds; ++round) {
    bool improved = false;
    for (int trial = 0; trial < 2 * static_cast<int>(d) + 2; ++trial) {
      Eigen::VectorXd cand = best_dir + spread * random_direction();
      if (cand.norm() == 0.0) continue;
      cand.normalize();
      const double v = score(cand);
      if (v < best) {
        best = v;
        best_dir = std::move(cand);
        improved = true;
      }
    }
    if (!improved) spread *= 0.5;
  }
  return best;
}

}  // namespace bregfix
