#include "bregfix/convex_set.hpp"
#include "bregfix/errors.hpp"
#include "bregfix/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace bregfix;

namespace {

Point euclid_halfspace(const Point& x, const Eigen::VectorXd& a, double b) {
  const double excess = x.vec().dot(a) - b;
  return excess <= 0.0 ? x : Point(x.vec() - excess / a.squaredNorm() * a);
}

double kl(const Point& y, const Point& x) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < y.dim(); ++i) s += (y[i] > 0 ? y[i] * std::log(y[i] / x[i]) : 0.0) - y[i] + x[i];
  return s;
}

// Minimizes kl(., x) over the unit simplex in R^3: grid search, then a shrinking pattern search.
Point simplex_kl_oracle(const Point& x) {
  double best_a = 0.0, best_b = 0.0, best = INFINITY;
  for (double a = 1e-3; a < 1.0; a += 1e-3) {
    for (double b = 1e-3; a + b < 1.0; b += 1e-3) {
      const double v = kl(Point{a, b, 1.0 - a - b}, x);
      if (v < best) best = v, best_a = a, best_b = b;
    }
  }
  for (double h = 1e-3; h > 1e-13; h *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (auto [da, db] : {std::pair{h, 0.0}, {-h, 0.0}, {0.0, h}, {0.0, -h}, {h, -h}, {-h, h}}) {
        const double a = best_a + da, b = best_b + db;
        if (a <= 0 || b <= 0 || a + b >= 1) continue;
        const double v = kl(Point{a, b, 1.0 - a - b}, x);
        if (v < best) best = v, best_a = a, best_b = b, moved = true;
      }
    }
  }
  return Point{best_a, best_b, 1.0 - best_a - best_b};
}

}  // namespace

TEST_CASE("contains on the documented points") {
  CHECK(contains(Halfspace{DualPoint{1.0, 1.0}, 2.0}, Point{1.0, 1.0}, 1e-9));
  CHECK_FALSE(contains(Box{Point{0.0, 0.0}, Point{1.0, 1.0}}, Point{2.0, 0.0}, 1e-9));
  CHECK(contains(ScaledSimplex{1.0}, Point{0.5, 0.5}, 1e-9));
  CHECK(contains(WholeSpace{}, Point{-1e9, 3.0}, 0.0));
  CHECK_FALSE(contains(Hyperplane{DualPoint{1.0, 0.0}, 1.0}, Point{1.1, 0.0}, 1e-9));
}

TEST_CASE("set validation") {
  CHECK_THROWS_AS(ConvexSet(Halfspace{DualPoint{0.0, 0.0}, 1.0}), DomainViolation);
  CHECK_THROWS_AS(ConvexSet(Box{Point{1.0}, Point{0.0}}), DomainViolation);
  CHECK_THROWS_AS(ConvexSet(ScaledSimplex{0.0}), DomainViolation);
  CHECK_THROWS_AS(ConvexSet(Intersection{}), DomainViolation);
  CHECK_THROWS_AS(ConvexSet(Intersection{{Halfspace{DualPoint{1.0}, 0.0}, Box{Point{0.0, 0.0}, Point{1.0, 1.0}}}}),
                  DomainViolation);
}

TEST_CASE("sq_norm halfspace projection of (2,2) onto <(1,1), y> <= 2") {
  const GeometryPtr sq = make_squared_norm();
  const Halfspace h{DualPoint{1.0, 1.0}, 2.0};
  const Point oracle = euclid_halfspace(Point{2.0, 2.0}, Eigen::Vector2d(1.0, 1.0), 2.0);
  CHECK(distance_euclidean(oracle, Point{1.0, 1.0}) == 0.0);

  const ProjectionResult r = bregman_project(*sq, h, Point{2.0, 2.0});
  CHECK(distance_euclidean(r.point, oracle) <= 1e-12);
  // grad f(point) = grad f(x) - lambda a: (2, 2) = (4, 4) - lambda (1, 1).
  REQUIRE(r.lagrange.has_value());
  CHECK(*r.lagrange == doctest::Approx(2.0));
}

TEST_CASE("projection of a member is the member itself") {
  const Point inside{0.3, 0.2};
  const std::vector<ConvexSet> sets{Halfspace{DualPoint{1.0, 1.0}, 2.0}, Box{Point{0.0, 0.0}, Point{1.0, 1.0}},
                                    Hyperplane{DualPoint{1.0, 1.0}, 0.5}, ScaledSimplex{0.5}, WholeSpace{}};
  for (const GeometryPtr& g : {make_squared_norm(), make_power(3.0), make_negative_entropy()}) {
    for (const ConvexSet& s : sets) {
      CHECK(distance_euclidean(bregman_project(*g, s, inside).point, inside) <= 1e-12);
    }
  }
}

TEST_CASE("entropy projection onto the unit simplex") {
  const GeometryPtr ent = make_negative_entropy();
  const Point x{2.0, 1.0, 1.0};
  const Point oracle = simplex_kl_oracle(x);
  CHECK(distance_euclidean(oracle, Point{0.5, 0.25, 0.25}) <= 1e-6);
  const Point p = bregman_project(*ent, ScaledSimplex{1.0}, x).point;
  CHECK(distance_euclidean(p, oracle) <= 1e-6);
  CHECK(distance_euclidean(p, Point{0.5, 0.25, 0.25}) <= 1e-15);
}

TEST_CASE("simplex projection under a non-entropy geometry") {
  SUBCASE("interior result is accepted") {
    const Point p = bregman_project(*make_squared_norm(), ScaledSimplex{1.0}, Point{0.6, 0.6}).point;
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == doctest::Approx(0.5));
  }
  SUBCASE("a result leaving the orthant is rejected") {
    CHECK_THROWS_AS(bregman_project(*make_squared_norm(), ScaledSimplex{1.0}, Point{3.0, -1.0}),
                    UnsupportedCombination);
  }
}

TEST_CASE("an unreachable hyperplane under entropy is infeasible") {
  CHECK_THROWS_AS(bregman_project(*make_negative_entropy(), Hyperplane{DualPoint{1.0, 1.0}, -1.0}, Point{1.0, 1.0}),
                  Infeasible);
}

TEST_CASE("variational residual") {
  const GeometryPtr sq = make_squared_norm();
  const Halfspace h{DualPoint{1.0, 1.0}, 2.0};
  std::mt19937_64 rng(3);
  const std::vector<Point> probes = sample_probes(h, Point{1.0, 1.0}, 3.0, 100, rng);
  REQUIRE(probes.size() == 100);

  SUBCASE("a member projects to itself, residual is 0") {
    const Point x{0.5, -1.0};
    CHECK(vi_residual(*sq, h, x, x, probes) <= 1e-12);
  }
  SUBCASE("the true projection is certified") {
    const Point z = bregman_project(*sq, h, Point{2.0, 2.0}).point;
    CHECK(vi_residual(*sq, h, Point{2.0, 2.0}, z, probes) <= 1e-9);
  }
  SUBCASE("a feasible wrong candidate is caught") {
    const Point wrong = Point{1.0, 1.0} - 0.1 * Point{1.0, 1.0};
    REQUIRE(contains(h, wrong, 0.0));
    CHECK(vi_residual(*sq, h, Point{2.0, 2.0}, wrong, probes) > 1e-3);
  }
  SUBCASE("probes outside the set are refused") {
    const std::vector<Point> bad{Point{5.0, 5.0}};
    CHECK_THROWS_AS(vi_residual(*sq, h, Point{2.0, 2.0}, Point{1.0, 1.0}, bad), ProbeOutsideSet);
  }
}

TEST_CASE("Pythagoras gap") {
  const GeometryPtr sq = make_squared_norm();
  const Halfspace h{DualPoint{1.0, 1.0}, 2.0};
  // Euclidean distances: |y - x|^2 - |y - Px|^2 - |Px - x|^2 = 8 - 2 - 2 at y = 0.
  CHECK(pythagoras_gap(*sq, h, Point{2.0, 2.0}, Point{0.0, 0.0}) == doctest::Approx(4.0));
  // Equality for points on the bounding line.
  CHECK(std::abs(pythagoras_gap(*sq, h, Point{2.0, 2.0}, Point{2.0, 0.0})) <= 1e-12);
  CHECK(std::abs(pythagoras_gap(*sq, h, Point{0.5, 0.5}, Point{-1.0, 0.0})) <= 1e-12);

  const GeometryPtr ent = make_negative_entropy();
  const Point x{2.0, 1.0, 1.0}, y{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  const Point px{0.5, 0.25, 0.25};
  const double by_hand = kl(y, x) - kl(y, px) - kl(px, x);
  CHECK(by_hand >= -1e-12);
  CHECK(pythagoras_gap(*ent, ScaledSimplex{1.0}, x, y) == doctest::Approx(by_hand).epsilon(1e-9));
  CHECK(pythagoras_gap(*ent, ScaledSimplex{1.0}, x, y) >= 0.0);
}

TEST_CASE("intersection projection is certified by the variational residual") {
  const GeometryPtr ent = make_negative_entropy();
  const ConvexSet set = Intersection{{ScaledSimplex{1.0}, Box{Point{0.1, 0.1}, Point{0.9, 0.9}}}};
  const ProjectionResult r = bregman_project(*ent, set, Point{0.7, 0.6});
  CHECK(contains(set, r.point, 1e-8));
  CHECK(r.iterations > 0);
  std::mt19937_64 rng(1);
  const std::vector<Point> probes = sample_probes(set, r.point, 1.0, 50, rng);
  CHECK(probes.size() >= 2);
  CHECK(vi_residual(*ent, set, Point{0.7, 0.6}, r.point, probes) <= 1e-7);
  CHECK(r.point[0] == doctest::Approx(7.0 / 13.0).epsilon(1e-9));
}

TEST_CASE("property: sq_norm projections agree with Euclidean formulas") {
  const GeometryPtr sq = make_squared_norm();
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Vector3d a(g(rng), g(rng), g(rng));
    const double b = u(rng);
    const Point x{u(rng), u(rng), u(rng)};
    const Point p = bregman_project(*sq, Halfspace{DualPoint(a), b}, x).point;
    CHECK(distance_euclidean(p, euclid_halfspace(x, a, b)) <= 1e-9);
    const Point lo{u(rng) - 3.0, u(rng) - 3.0, u(rng) - 3.0};
    const Point hi = lo + Point{1.0, 2.0, 3.0};
    const Point clamp(x.vec().cwiseMax(lo.vec()).cwiseMin(hi.vec()));
    CHECK(distance_euclidean(bregman_project(*sq, Box{lo, hi}, x).point, clamp) <= 1e-12);
  }
}

TEST_CASE("property: projections are idempotent, feasible and satisfy Pythagoras") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> pos(0.1, 3.0);
  for (const GeometryPtr& geom : {make_power(3.0), make_power(1.5), make_negative_entropy()}) {
    for (int k = 0; k < 50; ++k) {
      const Halfspace h{DualPoint{std::abs(g(rng)) + 0.1, std::abs(g(rng)) + 0.1}, pos(rng)};
      const Point x{pos(rng), pos(rng)};
      const Point p = bregman_project(*geom, h, x).point;
      CHECK(contains(h, p, 1e-8));
      CHECK(distance_euclidean(bregman_project(*geom, h, p).point, p) <= 1e-9);
      const Point y{0.01, 0.01};
      CHECK(pythagoras_gap(*geom, h, x, y) >= -1e-9);
    }
  }
}
