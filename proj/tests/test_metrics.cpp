#include "bregfix/errors.hpp"
#include "bregfix/legendre.hpp"
#include "bregfix/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace bregfix;

namespace {

constexpr double e = std::numbers::e;

// Generalized KL divergence written out coordinatewise.
double kl(const Point& y, const Point& x) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < y.dim(); ++i) s += y[i] * std::log(y[i] / x[i]) - y[i] + x[i];
  return s;
}

}  // namespace

TEST_CASE("distance on the documented points") {
  CHECK(bregman_distance(*make_squared_norm(), Point{1.0, 0.0}, Point{0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(bregman_distance(*make_negative_entropy(), Point{3.0, 7.0}, Point{3.0, 7.0}) == 0.0);
  const Point y{1.0, 1.0}, x{e, 1.0};
  CHECK(kl(y, x) == doctest::Approx(e - 2.0));
  CHECK(bregman_distance(*make_negative_entropy(), y, x) == doctest::Approx(kl(y, x)).epsilon(1e-12));
}

TEST_CASE("distance domain errors") {
  CHECK_THROWS_AS(bregman_distance(*make_negative_entropy(), Point{-1.0}, Point{1.0}), DomainViolation);
  CHECK_THROWS_AS(bregman_distance(*make_negative_entropy(), Point{1.0}, Point{0.0}), DomainViolation);
}

TEST_CASE("distance allows a boundary first argument under entropy") {
  CHECK(bregman_distance(*make_negative_entropy(), Point{0.0, 1.0}, Point{1.0, 1.0}) == doctest::Approx(1.0));
}

TEST_CASE("V function on the documented points") {
  const GeometryPtr sq = make_squared_norm();
  CHECK(v_function(*sq, Point{0.0, 0.0}, DualPoint{2.0, 0.0}) == doctest::Approx(1.0));
  CHECK(bregman_distance(*sq, Point{0.0, 0.0}, sq->conjugate_gradient(DualPoint{2.0, 0.0})) == doctest::Approx(1.0));

  const GeometryPtr ent = make_negative_entropy();
  CHECK(v_function(*ent, Point{1.0, 1.0}, DualPoint{1.0, 0.0}) == doctest::Approx(e - 2.0));
  CHECK(v_function(*ent, Point{1.0, 1.0}, DualPoint{1.0, 0.0}) ==
        doctest::Approx(bregman_distance(*ent, Point{1.0, 1.0}, Point{e, 1.0})));

  for (const GeometryPtr& g : {sq, make_power(3.0), ent}) {
    const Point x{0.7, 2.1};
    CHECK(std::abs(v_function(*g, x, g->gradient(x))) <= 1e-12);
  }
}

TEST_CASE("V perturbation gap on the documented points") {
  const GeometryPtr sq = make_squared_norm();
  CHECK(v_perturbation_gap(*sq, Point{0.0, 0.0}, DualPoint{0.0, 0.0}, DualPoint{2.0, 0.0}) == doctest::Approx(1.0));
  for (const GeometryPtr& g : {sq, make_power(3.0), make_negative_entropy()}) {
    CHECK(v_perturbation_gap(*g, Point{0.5, 1.5}, DualPoint{0.3, -0.2}, DualPoint{0.0, 0.0}) == doctest::Approx(0.0));
  }
}

TEST_CASE("property: V perturbation gap is nonnegative under entropy") {
  const GeometryPtr ent = make_negative_entropy();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(0.05, 5.0), dual(-2.0, 2.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Point x{pos(rng), pos(rng), pos(rng)};
    const DualPoint xs{dual(rng), dual(rng), dual(rng)};
    const DualPoint ys{dual(rng), dual(rng), dual(rng)};
    worst = std::min(worst, v_perturbation_gap(*ent, x, xs, ys));
  }
  CHECK(worst >= -1e-10);
}

TEST_CASE("property: distance is nonnegative, zero on the diagonal and matches |x - y|^2 under sq_norm") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-4.0, 4.0), pos(0.01, 4.0);
  const GeometryPtr sq = make_squared_norm(), p3 = make_power(3.0), ent = make_negative_entropy();
  for (int k = 0; k < 500; ++k) {
    const Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const Point pa{pos(rng), pos(rng)}, pb{pos(rng), pos(rng)};
    CHECK(std::abs(bregman_distance(*sq, a, b) - (a.vec() - b.vec()).squaredNorm()) <= 1e-10);
    CHECK(bregman_distance(*p3, a, b) >= 0.0);
    CHECK(bregman_distance(*ent, pa, pb) >= 0.0);
    CHECK(bregman_distance(*p3, a, a) == 0.0);
    CHECK(bregman_distance(*ent, pa, pa) == 0.0);
  }
}

TEST_CASE("total convexity modulus") {
  SUBCASE("sq_norm at t = 1 is exactly 1") {
    CHECK(std::abs(total_convexity_modulus(*make_squared_norm(), Point{0.3, -2.0, 1.0}, 1.0) - 1.0) <= 1e-9);
  }
  SUBCASE("t = 0 gives 0") {
    for (const GeometryPtr& g : {make_squared_norm(), make_power(3.0), make_negative_entropy()}) {
      CHECK(total_convexity_modulus(*g, Point{1.0, 1.0}, 0.0) == 0.0);
    }
  }
  SUBCASE("neg_entropy at (1,1), t = 0.5 is positive and near the circle minimum") {
    const GeometryPtr ent = make_negative_entropy();
    const Point x{1.0, 1.0};
    double grid_min = INFINITY;
    for (int k = 0; k < 200000; ++k) {
      const double th = 2.0 * std::numbers::pi * k / 200000.0;
      grid_min = std::min(grid_min, bregman_distance(*ent, Point{1.0 + 0.5 * std::cos(th), 1.0 + 0.5 * std::sin(th)}, x));
    }
    const double est = total_convexity_modulus(*ent, x, 0.5);
    CHECK(est > 0.0);
    CHECK(est >= grid_min - 1e-9);
    CHECK(est <= grid_min + 1e-4);
  }
}
