#pragma once

#include "bregfix/coordinates.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bregfix {

/// A Legendre function f packaged with f, grad f, f*, grad f* and its domain
/// predicates.
///
/// Geometries are dimension-agnostic and separable: every function acts
/// coordinatewise, so the same instance serves any R^d. The public members
/// validate their arguments (finiteness and domain) and then dispatch to the
/// protected `do_*` hooks, which concrete geometries implement. Instances are
/// immutable and may be shared across threads.
class LegendreGeometry {
 public:
  virtual ~LegendreGeometry() = default;

  /// Config-file name: "sq_norm", "p_power" or "neg_entropy".
  [[nodiscard]] virtual std::string name() const = 0;
  /// Real parameters of the family (the exponent p for p_power).
  [[nodiscard]] virtual std::vector<double> params() const { return {}; }

  [[nodiscard]] virtual bool in_domain(const Point& x) const = 0;
  [[nodiscard]] virtual bool in_interior(const Point& x) const = 0;
  /// All implemented geometries are cofinite, so every finite dual vector
  /// lies in int dom f*.
  [[nodiscard]] virtual bool in_conjugate_interior(const DualPoint& y) const { return y.all_finite(); }

  /// f(x). Throws DomainViolation if x is outside dom f.
  [[nodiscard]] double value(const Point& x) const;
  /// grad f(x). Throws DomainViolation if x is outside int dom f.
  [[nodiscard]] DualPoint gradient(const Point& x) const;
  /// f*(y) = sup_x <x, y> - f(x).
  [[nodiscard]] double conjugate_value(const DualPoint& y) const;
  /// grad f*(y), the inverse of grad f.
  [[nodiscard]] Point conjugate_gradient(const DualPoint& y) const;

  /// Diagonal of the Hessian of f at x (separable geometries only). Entries
  /// may be +inf where f is not twice differentiable.
  [[nodiscard]] Eigen::VectorXd hessian_diagonal(const Point& x) const;
  /// Diagonal of the Hessian of f* at y.
  [[nodiscard]] Eigen::VectorXd conjugate_hessian_diagonal(const DualPoint& y) const;

 protected:
  [[nodiscard]] virtual double do_value(const Point& x) const = 0;
  [[nodiscard]] virtual DualPoint do_gradient(const Point& x) const = 0;
  [[nodiscard]] virtual double do_conjugate_value(const DualPoint& y) const = 0;
  [[nodiscard]] virtual Point do_conjugate_gradient(const DualPoint& y) const = 0;
  [[nodiscard]] virtual Eigen::VectorXd do_hessian_diagonal(const Point& x) const = 0;
  [[nodiscard]] virtual Eigen::VectorXd do_conjugate_hessian_diagonal(const DualPoint& y) const = 0;
};

using GeometryPtr = std::shared_ptr<const LegendreGeometry>;

/// f(x) = sum of squares; grad f = 2x, f*(y) = |y|^2 / 4.
class SquaredNorm final : public LegendreGeometry {
 public:
  [[nodiscard]] std::string name() const override { return "sq_norm"; }
  [[nodiscard]] bool in_domain(const Point& x) const override { return x.all_finite(); }
  [[nodiscard]] bool in_interior(const Point& x) const override { return x.all_finite(); }

 protected:
  [[nodiscard]] double do_value(const Point& x) const override;
  [[nodiscard]] DualPoint do_gradient(const Point& x) const override;
  [[nodiscard]] double do_conjugate_value(const DualPoint& y) const override;
  [[nodiscard]] Point do_conjugate_gradient(const DualPoint& y) const override;
  [[nodiscard]] Eigen::VectorXd do_hessian_diagonal(const Point& x) const override;
  [[nodiscard]] Eigen::VectorXd do_conjugate_hessian_diagonal(const DualPoint& y) const override;
};

/// f(x) = (1/p) sum |x_i|^p for p in (1, inf), with conjugate exponent q.
class PowerFunction final : public LegendreGeometry {
 public:
  explicit PowerFunction(double p);

  [[nodiscard]] std::string name() const override { return "p_power"; }
  [[nodiscard]] std::vector<double> params() const override { return {p_}; }
  [[nodiscard]] bool in_domain(const Point& x) const override { return x.all_finite(); }
  [[nodiscard]] bool in_interior(const Point& x) const override { return x.all_finite(); }

  [[nodiscard]] double exponent() const { return p_; }
  [[nodiscard]] double conjugate_exponent() const { return q_; }

 protected:
  [[nodiscard]] double do_value(const Point& x) const override;
  [[nodiscard]] DualPoint do_gradient(const Point& x) const override;
  [[nodiscard]] double do_conjugate_value(const DualPoint& y) const override;
  [[nodiscard]] Point do_conjugate_gradient(const DualPoint& y) const override;
  [[nodiscard]] Eigen::VectorXd do_hessian_diagonal(const Point& x) const override;
  [[nodiscard]] Eigen::VectorXd do_conjugate_hessian_diagonal(const DualPoint& y) const override;

 private:
  double p_;
  double q_;
};

/// Boltzmann-Shannon entropy f(x) = sum x_i ln x_i - x_i (0 ln 0 = 0).
///
/// grad f = ln and grad f* = exp, so D_f is the generalized KL divergence.
/// Coordinates at or below `kBoundaryGuard` count as boundary points.
class NegativeEntropy final : public LegendreGeometry {
 public:
  static constexpr double kBoundaryGuard = 1e-300;

  [[nodiscard]] std::string name() const override { return "neg_entropy"; }
  [[nodiscard]] bool in_domain(const Point& x) const override;
  [[nodiscard]] bool in_interior(const Point& x) const override;

 protected:
  [[nodiscard]] double do_value(const Point& x) const override;
  [[nodiscard]] DualPoint do_gradient(const Point& x) const override;
  [[nodiscard]] double do_conjugate_value(const DualPoint& y) const override;
  [[nodiscard]] Point do_conjugate_gradient(const DualPoint& y) const override;
  [[nodiscard]] Eigen::VectorXd do_hessian_diagonal(const Point& x) const override;
  [[nodiscard]] Eigen::VectorXd do_conjugate_hessian_diagonal(const DualPoint& y) const override;
};

GeometryPtr make_squared_norm();
GeometryPtr make_power(double p);
GeometryPtr make_negative_entropy();

/// Builds a geometry from its config name. `p` is only read for "p_power".
GeometryPtr make_geometry(std::string_view name, double p = 2.0);

/// grad f*(sum_i t_i grad f(x_i)): the convex combination taken in the dual
/// space. Weights must be nonnegative and sum to 1 within 1e-12.
Point dual_average(const LegendreGeometry& geom, std::span<const double> weights,
                   std::span<const Point> points);

}  // namespace bregfix
