#include "bregfix/errors.hpp"
#include "bregfix/mappings.hpp"
#include "bregfix/metrics.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace bregfix;

TEST_CASE("projection mapping") {
  const GeometryPtr sq = make_squared_norm();
  const FixedPointMapping t = projection_mapping(sq, Halfspace{DualPoint{1.0, 1.0}, 2.0});
  CHECK(distance_euclidean(t(Point{2.0, 2.0}), Point{1.0, 1.0}) <= 1e-12);
  CHECK(t(Point{0.5, -3.0}) == Point{0.5, -3.0});
  REQUIRE(t.fixed_set().has_value());
  CHECK(*t.fixed_set() == ConvexSet(Halfspace{DualPoint{1.0, 1.0}, 2.0}));

  const FixedPointMapping s = projection_mapping(make_negative_entropy(), ScaledSimplex{1.0});
  CHECK(distance_euclidean(s(Point{2.0, 1.0, 1.0}), Point{0.5, 0.25, 0.25}) <= 1e-15);
}

TEST_CASE("resolvent of the zero operator is the identity") {
  for (const GeometryPtr& g : {make_squared_norm(), make_power(3.0), make_negative_entropy()}) {
    const MonotoneAffineOperator zero(Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Zero(2));
    const Point x{0.4, 1.7};
    CHECK(distance_euclidean(solve_resolvent(*g, zero, 1.0, x), x) <= 1e-12);
  }
}

TEST_CASE("sq_norm resolvent of A(z) = z - 3") {
  const GeometryPtr sq = make_squared_norm();
  const MonotoneAffineOperator op(Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Constant(1, -3.0));
  // 2z + (z - 3) = 2 * 0 gives z = 1.
  CHECK(solve_resolvent(*sq, op, 1.0, Point{0.0})[0] == doctest::Approx(1.0));
  const FixedPointMapping t = resolvent_mapping(sq, op, 1.0);
  CHECK(t(Point{3.0})[0] == doctest::Approx(3.0));
  REQUIRE(t.fixed_set().has_value());
  CHECK(contains(*t.fixed_set(), Point{3.0}, 1e-12));
}

TEST_CASE("resolvent fixes zeros of the operator in every geometry") {
  Eigen::MatrixXd m(2, 2);
  m << 2.0, 1.0, -1.0, 1.0;
  const Eigen::Vector2d zero_at(0.5, 2.0);
  const MonotoneAffineOperator op(m, -(m * zero_at));
  for (const GeometryPtr& g : {make_squared_norm(), make_power(3.0), make_negative_entropy()}) {
    CHECK(distance_euclidean(solve_resolvent(*g, op, 0.7, Point(zero_at)), Point(zero_at)) <= 1e-10);
    // Off the fixed point the defining equation holds.
    const Point x{1.5, 0.8};
    const Point z = solve_resolvent(*g, op, 0.7, x);
    const Eigen::VectorXd residual = g->gradient(z).vec() + 0.7 * op(z.vec()) - g->gradient(x).vec();
    CHECK(residual.norm() <= 1e-10);
  }
}

TEST_CASE("operator validation") {
  Eigen::MatrixXd not_monotone(2, 2);
  not_monotone << -1.0, 0.0, 0.0, 1.0;
  CHECK_THROWS_AS(MonotoneAffineOperator(not_monotone, Eigen::VectorXd::Zero(2)), DomainViolation);
  CHECK_THROWS_AS(MonotoneAffineOperator(Eigen::MatrixXd::Identity(2, 3), Eigen::VectorXd::Zero(2)), DomainViolation);
  CHECK_THROWS_AS(resolvent_mapping(make_squared_norm(),
                                    MonotoneAffineOperator(Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Zero(1)),
                                    0.0),
                  DomainViolation);
}

TEST_CASE("zero set of an affine operator") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = 1.0;
  CHECK(MonotoneAffineOperator(m, Eigen::Vector2d(-1.0, 0.0)).zero_set().has_value());
  CHECK_FALSE(MonotoneAffineOperator(m, Eigen::Vector2d(-1.0, 2.0)).zero_set().has_value());
  CHECK(MonotoneAffineOperator(Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Zero(2)).zero_set()->is_whole_space());
}

TEST_CASE("composition") {
  const GeometryPtr sq = make_squared_norm();
  const FixedPointMapping a = projection_mapping(sq, Halfspace{DualPoint{1.0, 0.0}, 0.0});
  const FixedPointMapping b = projection_mapping(sq, Halfspace{DualPoint{0.0, 1.0}, 0.0});
  const FixedPointMapping ab = compose(a, b);
  CHECK(ab(Point{2.0, 3.0}) == Point{0.0, 0.0});
  REQUIRE(ab.fixed_set().has_value());
  CHECK(contains(*ab.fixed_set(), Point{-1.0, -2.0}, 0.0));
}

TEST_CASE("quasi-nonexpansiveness checks") {
  const GeometryPtr sq = make_squared_norm();
  const Point origin{0.0, 0.0};

  SUBCASE("identity has zero violation") {
    const std::vector<Point> xs{Point{1.0, 2.0}, Point{-3.0, 0.5}};
    CHECK(bqne_violation(*sq, identity_mapping(), origin, xs) == 0.0);
  }
  SUBCASE("sq_norm projections pass on a random sample") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::vector<Point> xs;
    for (int k = 0; k < 500; ++k) xs.push_back(Point{u(rng), u(rng)});
    const FixedPointMapping t = projection_mapping(sq, Halfspace{DualPoint{1.0, 1.0}, 2.0});
    CHECK(bqne_violation(*sq, t, origin, xs) <= 1e-9);
  }
  SUBCASE("doubling map violates by exactly 6") {
    const FixedPointMapping doubling("doubling", [](const Point& x) { return 2.0 * x; });
    const std::vector<Point> xs{Point{1.0, 1.0}};
    // D(0, (2,2)) - D(0, (1,1)) = 8 - 2.
    CHECK(bqne_violation(*sq, doubling, origin, xs) == doctest::Approx(6.0));
  }
  SUBCASE("the reference must be a fixed point") {
    const FixedPointMapping shift("shift", [](const Point& x) { return x + Point{1.0, 0.0}; });
    const std::vector<Point> xs{Point{1.0, 1.0}};
    CHECK_THROWS_AS(bqne_violation(*sq, shift, origin, xs), NotAFixedPoint);
  }
  SUBCASE("empty sample") {
    CHECK(bqne_violation(*sq, identity_mapping(), origin, {}) == 0.0);
  }
}
