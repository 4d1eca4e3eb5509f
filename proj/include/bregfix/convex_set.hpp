#pragma once

#include "bregfix/coordinates.hpp"
#include "bregfix/legendre.hpp"

#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace bregfix {

class ConvexSet;

/// All of R^d.
struct WholeSpace {
  bool operator==(const WholeSpace&) const = default;
};

/// { y : <a, y> <= b }, a != 0.
struct Halfspace {
  DualPoint a;
  double b = 0.0;
  bool operator==(const Halfspace&) const = default;
};

/// { y : <a, y> = b }, a != 0.
struct Hyperplane {
  DualPoint a;
  double b = 0.0;
  bool operator==(const Hyperplane&) const = default;
};

/// { y : lo <= y <= hi } coordinatewise.
struct Box {
  Point lo;
  Point hi;
  bool operator==(const Box&) const = default;
};

/// { y : y >= 0, sum y = s }, s > 0. Dimension follows the argument.
struct ScaledSimplex {
  double s = 1.0;
  bool operator==(const ScaledSimplex&) const = default;
};

/// Intersection of a nonempty list of sets. Nonemptiness of the
/// intersection itself is the caller's responsibility.
struct Intersection {
  std::vector<ConvexSet> members;
  bool operator==(const Intersection& other) const;
};

/// Declarative closed convex set. Constructors validate the variant
/// invariants (nonzero normals, ordered boxes, nonempty intersections).
class ConvexSet {
 public:
  using Variant = std::variant<WholeSpace, Halfspace, Hyperplane, Box, ScaledSimplex, Intersection>;

  ConvexSet() : v_(WholeSpace{}) {}
  ConvexSet(WholeSpace s) : v_(s) {}  // NOLINT(google-explicit-constructor)
  ConvexSet(Halfspace s);             // NOLINT(google-explicit-constructor)
  ConvexSet(Hyperplane s);            // NOLINT(google-explicit-constructor)
  ConvexSet(Box s);                   // NOLINT(google-explicit-constructor)
  ConvexSet(ScaledSimplex s);         // NOLINT(google-explicit-constructor)
  ConvexSet(Intersection s);          // NOLINT(google-explicit-constructor)

  [[nodiscard]] const Variant& variant() const { return v_; }
  /// Dimension implied by the set data, if any (WholeSpace and
  /// ScaledSimplex fit any dimension).
  [[nodiscard]] std::optional<Eigen::Index> dim() const;
  [[nodiscard]] std::string kind() const;
  [[nodiscard]] bool is_whole_space() const { return std::holds_alternative<WholeSpace>(v_); }

  template <class T>
  [[nodiscard]] const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  bool operator==(const ConvexSet& other) const { return v_ == other.v_; }

 private:
  Variant v_;
};

/// Largest constraint violation of x (0 when x is in the set).
double constraint_violation(const ConvexSet& set, const Point& x);

/// True iff every defining constraint holds within tol.
bool contains(const ConvexSet& set, const Point& x, double tol);

struct ProjectionOptions {
  /// Intersection sweeps stop once D_f(x_k, x_{k-1}) between sweeps drops below this.
  double intersection_tol = 1e-14;
  int max_sweeps = 100000;
};

struct ProjectionResult {
  Point point;
  /// Multiplier of the active affine constraint, in gradient units:
  /// grad f(point) = grad f(x) - lagrange * a.
  std::optional<double> lagrange;
  int iterations = 0;
  /// Filled in by certification routines; NaN when not computed.
  double vi_residual = std::numeric_limits<double>::quiet_NaN();
};

/// Bregman projection argmin_{y in C} D_f(y, x).
///
/// Halfspaces and hyperplanes are solved through the monotone scalar map
/// lambda -> <a, grad f*(grad f(x) - lambda a)>; boxes by clamping (valid for
/// the separable geometries here); the scaled simplex in closed form under
/// neg_entropy and through the hyperplane solve otherwise (rejected with
/// UnsupportedCombination if that leaves the orthant). Intersections use
/// cyclic Bregman projections with Dykstra dual corrections.
ProjectionResult bregman_project(const LegendreGeometry& geom, const ConvexSet& set, const Point& x,
                                 const ProjectionOptions& options = {});

/// max over probes of <grad f(x) - grad f(z), y - z>. A value <= 1e-7
/// certifies z as the projection of x against the probe set. Returns
/// -infinity for an empty probe list. Throws ProbeOutsideSet.
double vi_residual(const LegendreGeometry& geom, const ConvexSet& set, const Point& x, const Point& z,
                   std::span<const Point> probes);

/// D_f(y, x) - D_f(y, P x) - D_f(P x, x) for y in the set; nonnegative.
double pythagoras_gap(const LegendreGeometry& geom, const ConvexSet& set, const Point& x, const Point& y);

/// Random feasible points of `set` in R^dim (plus box and simplex vertices).
///
/// Unbounded sets are sampled inside the cube center +- radius and filtered
/// by rejection; hyperplane members are sampled by Euclidean projection onto
/// the plane. May return fewer than `count` points when rejection fails.
std::vector<Point> sample_probes(const ConvexSet& set, const Point& center, double radius, std::size_t count,
                                 std::mt19937_64& rng);

}  // namespace bregfix
