#pragma once

#include "bregfix/convex_set.hpp"
#include "bregfix/coordinates.hpp"
#include "bregfix/legendre.hpp"

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <span>
#include <string>

namespace bregfix {

/// A self-mapping T of C, used as one of the T_i of the iterative schemes.
///
/// `fixed_set`, when present, is the declared F(T); constructors only
/// declare it for classes where it is known exactly.
class FixedPointMapping {
 public:
  using Function = std::function<Point(const Point&)>;

  FixedPointMapping(std::string label, Function apply, std::optional<ConvexSet> fixed_set = std::nullopt)
      : label_(std::move(label)), apply_(std::move(apply)), fixed_set_(std::move(fixed_set)) {}

  Point operator()(const Point& x) const { return apply_(x); }
  [[nodiscard]] Point apply(const Point& x) const { return apply_(x); }
  [[nodiscard]] const std::optional<ConvexSet>& fixed_set() const { return fixed_set_; }
  [[nodiscard]] const std::string& label() const { return label_; }

 private:
  std::string label_;
  Function apply_;
  std::optional<ConvexSet> fixed_set_;
};

/// A(z) = M z + q with M monotone (symmetric part positive semidefinite).
class MonotoneAffineOperator {
 public:
  /// Throws DomainViolation on shape errors or when the symmetric part of M
  /// has an eigenvalue below -1e-10.
  MonotoneAffineOperator(Eigen::MatrixXd m, Eigen::VectorXd q);

  [[nodiscard]] const Eigen::MatrixXd& matrix() const { return m_; }
  [[nodiscard]] const Eigen::VectorXd& offset() const { return q_; }
  [[nodiscard]] Eigen::Index dim() const { return q_.size(); }
  [[nodiscard]] Eigen::VectorXd operator()(const Eigen::VectorXd& z) const { return m_ * z + q_; }

  /// {z : M z + q = 0} as a set: the hyperplanes of the nonzero rows of M.
  /// Returns nullopt when a zero row carries a nonzero offset (no zero exists).
  [[nodiscard]] std::optional<ConvexSet> zero_set() const;

 private:
  Eigen::MatrixXd m_;
  Eigen::VectorXd q_;
};

FixedPointMapping identity_mapping();

/// Bregman projection onto `set`; F(T) = set.
FixedPointMapping projection_mapping(GeometryPtr geom, ConvexSet set);

/// Bregman resolvent x -> z solving grad f(z) + step (M z + q) = grad f(x).
///
/// F(T) is the zero set of the operator. Under sq_norm the equation is the
/// linear system (2I + step M) z = 2x - step q; other geometries use damped
/// Newton (step halving, at most 60 halvings) and throw NewtonNonConvergence
/// after 200 iterations.
FixedPointMapping resolvent_mapping(GeometryPtr geom, MonotoneAffineOperator op, double step);

/// Solves the resolvent equation directly; exposed for residual checks.
Point solve_resolvent(const LegendreGeometry& geom, const MonotoneAffineOperator& op, double step, const Point& x);

/// T2 after T1. The declared fixed set is the intersection of the two
/// declared sets, valid when they share a point.
FixedPointMapping compose(FixedPointMapping outer, FixedPointMapping inner);

/// max over xs of D_f(p, T x) - D_f(p, x); <= 1e-9 certifies the
/// quasi-nonexpansive inequality on the sample. Throws NotAFixedPoint unless
/// |T p - p| <= 1e-9. Returns 0 for an empty sample.
double bqne_violation(const LegendreGeometry& geom, const FixedPointMapping& mapping, const Point& p,
                      std::span<const Point> xs);

}  // namespace bregfix
