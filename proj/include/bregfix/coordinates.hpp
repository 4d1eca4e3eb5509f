#pragma once

#include <Eigen/Core>

#include <cmath>
#include <initializer_list>
#include <utility>

namespace bregfix {

struct PrimalTag {};
struct DualTag {};

/// Finite coordinate vector tagged with the space it lives in.
///
/// `Point` values live in the primal space and `DualPoint` values in the
/// dual space; the tag keeps gradients from being mixed up with primal
/// iterates. The only bridge between the two is `pairing`.
template <class Tag>
class Coordinates {
 public:
  Coordinates() = default;
  explicit Coordinates(Eigen::VectorXd v) : v_(std::move(v)) {}
  Coordinates(std::initializer_list<double> values) : v_(static_cast<Eigen::Index>(values.size())) {
    Eigen::Index i = 0;
    for (double value : values) v_[i++] = value;
  }

  static Coordinates zeros(Eigen::Index dim) { return Coordinates(Eigen::VectorXd::Zero(dim)); }
  static Coordinates constant(Eigen::Index dim, double value) {
    return Coordinates(Eigen::VectorXd::Constant(dim, value));
  }

  [[nodiscard]] Eigen::Index dim() const { return v_.size(); }
  [[nodiscard]] const Eigen::VectorXd& vec() const { return v_; }
  [[nodiscard]] Eigen::VectorXd& vec() { return v_; }
  [[nodiscard]] double operator[](Eigen::Index i) const { return v_[i]; }
  [[nodiscard]] double& operator[](Eigen::Index i) { return v_[i]; }

  [[nodiscard]] bool all_finite() const { return v_.allFinite(); }
  [[nodiscard]] double norm() const { return v_.norm(); }

  Coordinates& operator+=(const Coordinates& other) {
    v_ += other.v_;
    return *this;
  }
  Coordinates& operator-=(const Coordinates& other) {
    v_ -= other.v_;
    return *this;
  }
  Coordinates& operator*=(double s) {
    v_ *= s;
    return *this;
  }

  friend Coordinates operator+(Coordinates a, const Coordinates& b) { return a += b; }
  friend Coordinates operator-(Coordinates a, const Coordinates& b) { return a -= b; }
  friend Coordinates operator*(double s, Coordinates a) { return a *= s; }
  friend Coordinates operator-(Coordinates a) {
    a.v_ = -a.v_;
    return a;
  }
  friend bool operator==(const Coordinates& a, const Coordinates& b) {
    return a.v_.size() == b.v_.size() && a.v_ == b.v_;
  }

 private:
  Eigen::VectorXd v_;
};

using Point = Coordinates<PrimalTag>;
using DualPoint = Coordinates<DualTag>;

/// Duality pairing <x, x*>; in R^d the coordinate dot product.
inline double pairing(const Point& x, const DualPoint& xstar) { return x.vec().dot(xstar.vec()); }

inline double distance_euclidean(const Point& a, const Point& b) { return (a.vec() - b.vec()).norm(); }

}  // namespace bregfix
