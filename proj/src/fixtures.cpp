#include "bregfix/fixtures.hpp"

#include "bregfix/errors.hpp"

#include <random>

namespace bregfix {

ConvexSet default_ambient(const LegendreGeometry& geom, Eigen::Index dim) {
  const bool orthant = !geom.in_domain(Point::constant(dim, -1.0));
  const double lo = orthant ? 1e-6 : -1e6;
  return ConvexSet(Box{Point::constant(dim, lo), Point::constant(dim, 1e6)});
}

std::vector<ConvexSet> common_fixed_sets(std::span<const FixedPointMapping> mappings, const ConvexSet& ambient) {
  std::vector<ConvexSet> sets;
  for (const FixedPointMapping& m : mappings) {
    if (!m.fixed_set()) throw DomainViolation("mapping '" + m.label() + "' declares no fixed set");
    if (!m.fixed_set()->is_whole_space()) sets.push_back(*m.fixed_set());
  }
  if (!ambient.is_whole_space()) sets.push_back(ambient);
  return sets;
}

namespace {

void attach_reference(Fixture& fx) {
  fx.fixed_sets = common_fixed_sets(fx.mappings, fx.config.ambient);
  fx.config.reference_p = reference_limit(*fx.config.geom, fx.fixed_sets, fx.config.u).point;
}

}  // namespace

Fixture two_halfspace_fixture() {
  Fixture fx;
  fx.name = "two_halfspaces";
  GeometryPtr geom = make_squared_norm();
  fx.config.geom = geom;
  fx.config.ambient = default_ambient(*geom, 2);
  fx.config.u = Point{1.0, 1.0};
  fx.config.x0 = Point{1.0, 1.0};
  fx.mappings.push_back(projection_mapping(geom, Halfspace{DualPoint{1.0, 0.0}, 0.0}));
  fx.mappings.push_back(projection_mapping(geom, Halfspace{DualPoint{0.0, 1.0}, 0.0}));
  fx.fixed_sets = common_fixed_sets(fx.mappings, fx.config.ambient);
  fx.config.reference_p = Point{0.0, 0.0};
  return fx;
}

Fixture entropy_simplex_box_fixture() {
  Fixture fx;
  fx.name = "entropy_simplex_box";
  GeometryPtr geom = make_negative_entropy();
  fx.config.geom = geom;
  fx.config.ambient = default_ambient(*geom, 2);
  fx.config.u = Point{0.7, 0.6};
  fx.config.x0 = Point{0.7, 0.6};
  fx.mappings.push_back(projection_mapping(geom, ScaledSimplex{1.0}));
  fx.mappings.push_back(projection_mapping(geom, Box{Point{0.1, 0.1}, Point{0.9, 0.9}}));
  attach_reference(fx);
  return fx;
}

Fixture halfspace_family_fixture(std::uint64_t seed, std::size_t count, Eigen::Index dim) {
  Fixture fx;
  fx.name = "halfspace_family";
  GeometryPtr geom = make_squared_norm();
  fx.config.geom = geom;
  fx.config.ambient = default_ambient(*geom, dim);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Halfspace> halfspaces;
  for (std::size_t i = 0; i < count; ++i) {
    Eigen::VectorXd a(dim);
    for (Eigen::Index k = 0; k < dim; ++k) a[k] = gauss(rng);
    a.normalize();
    halfspaces.push_back({DualPoint(a), 1.0 + 0.25 * unit(rng)});
  }
  auto outside = [&](const Point& x) {
    for (const Halfspace& h : halfspaces) {
      if (pairing(x, h.a) > h.b + 1e-3) return true;
    }
    return false;
  };
  Point u;
  do {
    Eigen::VectorXd v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) v[k] = 4.0 * unit(rng) - 2.0;
    u = Point(v);
  } while (!outside(u));
  fx.config.u = u;
  fx.config.x0 = u;
  for (const Halfspace& h : halfspaces) fx.mappings.push_back(projection_mapping(geom, h));
  attach_reference(fx);
  return fx;
}

Fixture mixed_family_fixture() {
  Fixture fx;
  fx.name = "mixed_family";
  GeometryPtr geom = make_squared_norm();
  fx.config.geom = geom;
  fx.config.ambient = default_ambient(*geom, 3);
  const Point target{1.0, -1.0, 0.5};

  fx.mappings.push_back(projection_mapping(geom, Halfspace{DualPoint{1.0, 0.0, 0.0}, 1.0}));
  fx.mappings.push_back(projection_mapping(geom, Halfspace{DualPoint{0.0, 1.0, 1.0}, -0.5}));
  fx.mappings.push_back(projection_mapping(geom, Halfspace{DualPoint{1.0, 1.0, 1.0}, 1.0}));

  Eigen::MatrixXd m1(3, 3);
  m1 << 2.0, 0.5, 0.0, 0.5, 1.0, 0.0, 0.0, 0.0, 1.5;
  Eigen::MatrixXd m2(3, 3);
  m2 << 1.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0;
  fx.mappings.push_back(resolvent_mapping(geom, MonotoneAffineOperator(m1, -(m1 * target.vec())), 1.0));
  fx.mappings.push_back(resolvent_mapping(geom, MonotoneAffineOperator(m2, -(m2 * target.vec())), 1.0));

  fx.config.u = Point{1.3, -1.2, 0.9};
  fx.config.x0 = Point{0.0, 0.0, 0.0};
  // A small anchor weight keeps the anchor bias below the residual target.
  fx.config.schedules.alpha = Sequence::power(1.0, 1e-3);
  fx.fixed_sets = common_fixed_sets(fx.mappings, fx.config.ambient);
  fx.config.reference_p = target;
  return fx;
}

RunResult run_fixture(const Fixture& fixture) {
  if (fixture.mappings.size() == 2) return run_two(fixture.config, fixture.mappings[0], fixture.mappings[1]);
  return run_family(fixture.config, fixture.mappings);
}

}  // namespace bregfix
