#include "bregfix/mappings.hpp"

#include "bregfix/errors.hpp"
#include "bregfix/metrics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace bregfix {

namespace {

constexpr int kMaxNewtonIterations = 200;
constexpr int kMaxHalvings = 60;
// Stand-in for an infinite Hessian entry (p_power with p < 2 at zero).
constexpr double kStiffCurvature = 1e12;

}  // namespace

MonotoneAffineOperator::MonotoneAffineOperator(Eigen::MatrixXd m, Eigen::VectorXd q)
    : m_(std::move(m)), q_(std::move(q)) {
  if (m_.rows() != m_.cols() || m_.rows() != q_.size() || q_.size() == 0) {
    throw DomainViolation("monotone operator: M must be square and match q");
  }
  if (!m_.allFinite() || !q_.allFinite()) throw DomainViolation("monotone operator: non-finite entries");
  const Eigen::MatrixXd sym = 0.5 * (m_ + m_.transpose());
  const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym, Eigen::EigenvaluesOnly).eigenvalues()[0];
  if (min_eig < -1e-10) {
    throw DomainViolation("monotone operator: symmetric part has eigenvalue " + std::to_string(min_eig));
  }
}

std::optional<ConvexSet> MonotoneAffineOperator::zero_set() const {
  std::vector<ConvexSet> planes;
  for (Eigen::Index r = 0; r < m_.rows(); ++r) {
    if (m_.row(r).isZero(0.0)) {
      if (q_[r] != 0.0) return std::nullopt;
      continue;
    }
    planes.emplace_back(Hyperplane{DualPoint(m_.row(r).transpose()), -q_[r]});
  }
  if (planes.empty()) return ConvexSet(WholeSpace{});
  if (planes.size() == 1) return planes.front();
  return ConvexSet(Intersection{std::move(planes)});
}

FixedPointMapping identity_mapping() {
  return FixedPointMapping("identity", [](const Point& x) { return x; }, ConvexSet(WholeSpace{}));
}

FixedPointMapping projection_mapping(GeometryPtr geom, ConvexSet set) {
  std::string label = "projection:" + set.kind();
  ConvexSet declared = set;
  return FixedPointMapping(
      std::move(label),
      [geom = std::move(geom), set = std::move(set)](const Point& x) { return bregman_project(*geom, set, x).point; },
      std::move(declared));
}

Point solve_resolvent(const LegendreGeometry& geom, const MonotoneAffineOperator& op, double step, const Point& x) {
  if (x.dim() != op.dim()) throw DomainViolation("resolvent: dimension mismatch");
  if (dynamic_cast<const SquaredNorm*>(&geom) != nullptr) {
    const Eigen::Index d = x.dim();
    const Eigen::MatrixXd lhs = 2.0 * Eigen::MatrixXd::Identity(d, d) + step * op.matrix();
    const Eigen::VectorXd rhs = 2.0 * x.vec() - step * op.offset();
    return Point(lhs.partialPivLu().solve(rhs));
  }

  const DualPoint target = geom.gradient(x);
  const double tol = 1e-12 * (1.0 + target.norm());
  auto residual = [&](const Point& z) {
    return Eigen::VectorXd(geom.gradient(z).vec() + step * op(z.vec()) - target.vec());
  };

  Point z = x;
  Eigen::VectorXd g = residual(z);
  double g_norm = g.norm();
  for (int it = 0; it < kMaxNewtonIterations; ++it) {
    if (g_norm <= tol) return z;
    Eigen::VectorXd curvature = geom.hessian_diagonal(z);
    for (Eigen::Index i = 0; i < curvature.size(); ++i) {
      if (!std::isfinite(curvature[i])) curvature[i] = kStiffCurvature;
    }
    Eigen::MatrixXd jacobian = step * op.matrix();
    jacobian.diagonal() += curvature;
    const Eigen::VectorXd direction = jacobian.partialPivLu().solve(-g);

    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h <= kMaxHalvings; ++h, t *= 0.5) {
      Point trial(z.vec() + t * direction);
      if (!geom.in_interior(trial)) continue;
      Eigen::VectorXd g_trial = residual(trial);
      const double trial_norm = g_trial.norm();
      if (trial_norm < g_norm) {
        z = std::move(trial);
        g = std::move(g_trial);
        g_norm = trial_norm;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (g_norm <= tol) return z;
  throw NewtonNonConvergence("resolvent: Newton failed to reach residual tolerance (|g| = " + std::to_string(g_norm) +
                             ")");
}

FixedPointMapping resolvent_mapping(GeometryPtr geom, MonotoneAffineOperator op, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainViolation("resolvent: step must be positive");
  std::optional<ConvexSet> zeros = op.zero_set();
  return FixedPointMapping(
      "resolvent",
      [geom = std::move(geom), op = std::move(op), step](const Point& x) { return solve_resolvent(*geom, op, step, x); },
      std::move(zeros));
}

FixedPointMapping compose(FixedPointMapping outer, FixedPointMapping inner) {
  std::optional<ConvexSet> fixed;
  if (outer.fixed_set() && inner.fixed_set()) {
    fixed = ConvexSet(Intersection{{*outer.fixed_set(), *inner.fixed_set()}});
  }
  std::string label = outer.label() + "*" + inner.label();
  return FixedPointMapping(
      std::move(label),
      [outer = std::move(outer), inner = std::move(inner)](const Point& x) { return outer(inner(x)); },
      std::move(fixed));
}

double bqne_violation(const LegendreGeometry& geom, const FixedPointMapping& mapping, const Point& p,
                      std::span<const Point> xs) {
  if (distance_euclidean(mapping(p), p) > 1e-9) {
    throw NotAFixedPoint("bqne_violation: p is not a fixed point of " + mapping.label());
  }
  if (xs.empty()) return 0.0;
  double worst = -std::numeric_limits<double>::infinity();
  for (const Point& x : xs) {
    worst = std::max(worst, bregman_distance(geom, p, mapping(x)) - bregman_distance(geom, p, x));
  }
  return worst;
}

}  // namespace bregfix
