#include "bregfix/legendre.hpp"

#include "bregfix/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace bregfix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite_dual(const DualPoint& y, const char* op) {
  if (!y.all_finite()) throw DomainViolation(std::string(op) + ": dual vector has non-finite coordinates");
}

Point require_finite_result(Point x, const char* op) {
  if (!x.all_finite()) throw NumericalConsistency(std::string(op) + ": result overflowed");
  return x;
}

// sign(v) |v|^e
double signed_power(double v, double e) {
  if (v == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(v), e), v);
}

}  // namespace

double LegendreGeometry::value(const Point& x) const {
  if (!in_domain(x)) throw DomainViolation(name() + ": point outside dom f");
  return do_value(x);
}

DualPoint LegendreGeometry::gradient(const Point& x) const {
  if (!in_interior(x)) throw DomainViolation(name() + ": point outside int dom f");
  return do_gradient(x);
}

double LegendreGeometry::conjugate_value(const DualPoint& y) const {
  require_finite_dual(y, "conjugate_value");
  return do_conjugate_value(y);
}

Point LegendreGeometry::conjugate_gradient(const DualPoint& y) const {
  require_finite_dual(y, "conjugate_gradient");
  return require_finite_result(do_conjugate_gradient(y), "conjugate_gradient");
}

Eigen::VectorXd LegendreGeometry::hessian_diagonal(const Point& x) const {
  if (!in_interior(x)) throw DomainViolation(name() + ": point outside int dom f");
  return do_hessian_diagonal(x);
}

Eigen::VectorXd LegendreGeometry::conjugate_hessian_diagonal(const DualPoint& y) const {
  require_finite_dual(y, "conjugate_hessian_diagonal");
  return do_conjugate_hessian_diagonal(y);
}

// ---------------------------------------------------------------------------
// sq_norm

double SquaredNorm::do_value(const Point& x) const { return x.vec().squaredNorm(); }

DualPoint SquaredNorm::do_gradient(const Point& x) const { return DualPoint(2.0 * x.vec()); }

double SquaredNorm::do_conjugate_value(const DualPoint& y) const { return 0.25 * y.vec().squaredNorm(); }

Point SquaredNorm::do_conjugate_gradient(const DualPoint& y) const { return Point(0.5 * y.vec()); }

Eigen::VectorXd SquaredNorm::do_hessian_diagonal(const Point& x) const {
  return Eigen::VectorXd::Constant(x.dim(), 2.0);
}

Eigen::VectorXd SquaredNorm::do_conjugate_hessian_diagonal(const DualPoint& y) const {
  return Eigen::VectorXd::Constant(y.dim(), 0.5);
}

// ---------------------------------------------------------------------------
// p_power

PowerFunction::PowerFunction(double p) : p_(p), q_(p / (p - 1.0)) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainViolation("p_power: exponent must lie in (1, inf)");
}

double PowerFunction::do_value(const Point& x) const {
  return x.vec().array().abs().pow(p_).sum() / p_;
}

DualPoint PowerFunction::do_gradient(const Point& x) const {
  Eigen::VectorXd g(x.dim());
  for (Eigen::Index i = 0; i < x.dim(); ++i) g[i] = signed_power(x[i], p_ - 1.0);
  return DualPoint(std::move(g));
}

double PowerFunction::do_conjugate_value(const DualPoint& y) const {
  return y.vec().array().abs().pow(q_).sum() / q_;
}

Point PowerFunction::do_conjugate_gradient(const DualPoint& y) const {
  Eigen::VectorXd x(y.dim());
  for (Eigen::Index i = 0; i < y.dim(); ++i) x[i] = signed_power(y[i], q_ - 1.0);
  return Point(std::move(x));
}

Eigen::VectorXd PowerFunction::do_hessian_diagonal(const Point& x) const {
  Eigen::VectorXd h(x.dim());
  for (Eigen::Index i = 0; i < x.dim(); ++i) {
    const double a = std::abs(x[i]);
    h[i] = (a == 0.0 && p_ < 2.0) ? kInf : (p_ - 1.0) * std::pow(a, p_ - 2.0);
  }
  return h;
}

Eigen::VectorXd PowerFunction::do_conjugate_hessian_diagonal(const DualPoint& y) const {
  Eigen::VectorXd h(y.dim());
  for (Eigen::Index i = 0; i < y.dim(); ++i) {
    const double a = std::abs(y[i]);
    h[i] = (a == 0.0 && q_ < 2.0) ? kInf : (q_ - 1.0) * std::pow(a, q_ - 2.0);
  }
  return h;
}

// ---------------------------------------------------------------------------
// neg_entropy

bool NegativeEntropy::in_domain(const Point& x) const {
  return x.all_finite() && (x.vec().array() >= 0.0).all();
}

bool NegativeEntropy::in_interior(const Point& x) const {
  return x.all_finite() && (x.vec().array() > kBoundaryGuard).all();
}

double NegativeEntropy::do_value(const Point& x) const {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.dim(); ++i) {
    const double v = x[i];
    sum += (v == 0.0 ? 0.0 : v * std::log(v)) - v;
  }
  return sum;
}

DualPoint NegativeEntropy::do_gradient(const Point& x) const {
  return DualPoint(x.vec().array().log().matrix());
}

double NegativeEntropy::do_conjugate_value(const DualPoint& y) const { return y.vec().array().exp().sum(); }

Point NegativeEntropy::do_conjugate_gradient(const DualPoint& y) const {
  return Point(y.vec().array().exp().matrix());
}

Eigen::VectorXd NegativeEntropy::do_hessian_diagonal(const Point& x) const {
  return x.vec().array().inverse().matrix();
}

Eigen::VectorXd NegativeEntropy::do_conjugate_hessian_diagonal(const DualPoint& y) const {
  return y.vec().array().exp().matrix();
}

// ---------------------------------------------------------------------------

GeometryPtr make_squared_norm() { return std::make_shared<const SquaredNorm>(); }
GeometryPtr make_power(double p) { return std::make_shared<const PowerFunction>(p); }
GeometryPtr make_negative_entropy() { return std::make_shared<const NegativeEntropy>(); }

GeometryPtr make_geometry(std::string_view name, double p) {
  if (name == "sq_norm") return make_squared_norm();
  if (name == "p_power") return make_power(p);
  if (name == "neg_entropy") return make_negative_entropy();
  throw DomainViolation("unknown geometry '" + std::string(name) + "'");
}

Point dual_average(const LegendreGeometry& geom, std::span<const double> weights,
                   std::span<const Point> points) {
  if (weights.size() != points.size() || points.empty()) {
    throw WeightError("dual_average: need one weight per point and at least one point");
  }
  double total = 0.0;
  for (double t : weights) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw WeightError("dual_average: weights must be nonnegative");
    total += t;
  }
  if (std::abs(total - 1.0) > 1e-12) throw WeightError("dual_average: weights must sum to 1");

  DualPoint acc = DualPoint::zeros(points.front().dim());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].dim() != acc.dim()) throw DomainViolation("dual_average: dimension mismatch");
    acc += weights[i] * geom.gradient(points[i]);
  }
  return geom.conjugate_gradient(acc);
}

}  // namespace bregfix
