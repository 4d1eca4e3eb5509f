#include "bregfix/convex_set.hpp"

#include "bregfix/errors.hpp"
#include "bregfix/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bregfix {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void check_dim(const ConvexSet& set, const Point& x, const char* op) {
  if (auto d = set.dim(); d && *d != x.dim()) {
    throw DomainViolation(std::string(op) + ": set dimension " + std::to_string(*d) + " does not match point dimension " +
                          std::to_string(x.dim()));
  }
}

// Bracketing starts at lambda = 1 and doubles; this many doublings reach ~1e300.
constexpr int kMaxDoublings = 1000;
constexpr int kMaxRootIterations = 500;

struct ScalarSolve {
  Point point;
  double lambda = 0.0;
  int iterations = 0;
};

// Finds lambda > 0 with <a, grad f*(xi - lambda a)> = b, given that the
// value at lambda = 0 exceeds b. The map is nonincreasing in lambda.
ScalarSolve solve_affine_multiplier(const LegendreGeometry& geom, const DualPoint& xi, const DualPoint& a, double b) {
  auto primal_at = [&](double lambda) { return geom.conjugate_gradient(xi - lambda * a); };
  auto phi_at = [&](const Point& z) { return pairing(z, a); };
  const double tol = 1e-12 * (1.0 + std::abs(b));

  double lo = 0.0;
  Point z_lo = geom.conjugate_gradient(xi);
  double phi_lo = phi_at(z_lo);

  double hi = 1.0;
  Point z_hi = primal_at(hi);
  double phi_hi = phi_at(z_hi);
  int iterations = 0;
  while (phi_hi > b) {
    const double slack = 1e-12 * std::max(1.0, std::abs(phi_lo));
    if (phi_hi > phi_lo + slack) {
      throw NumericalConsistency("halfspace projection: <a, z(lambda)> increased while bracketing");
    }
    if (++iterations > kMaxDoublings) {
      throw Infeasible("halfspace projection: cannot bracket the multiplier; the set misses int dom f");
    }
    lo = hi;
    z_lo = std::move(z_hi);
    phi_lo = phi_hi;
    hi *= 2.0;
    z_hi = primal_at(hi);
    phi_hi = phi_at(z_hi);
  }
  if (std::abs(phi_hi - b) <= tol) return {std::move(z_hi), hi, iterations};

  // Safeguarded Newton on the bracket [lo, hi], phi(lo) > b >= phi(hi).
  double lambda = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxRootIterations; ++it) {
    ++iterations;
    const DualPoint shifted = xi - lambda * a;
    Point z = geom.conjugate_gradient(shifted);
    const double phi = phi_at(z);
    if (std::abs(phi - b) <= tol) return {std::move(z), lambda, iterations};
    if (phi > b) {
      lo = lambda;
    } else {
      hi = lambda;
      z_hi = z;
    }
    const Eigen::VectorXd h = geom.conjugate_hessian_diagonal(shifted);
    const double slope = -(a.vec().array().square() * h.array()).sum();
    double next = (std::isfinite(slope) && slope < 0.0) ? lambda - (phi - b) / slope : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == lambda || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      // Bracket exhausted at machine precision; return the feasible side.
      return {std::move(z_hi), hi, iterations};
    }
    lambda = next;
  }
  return {std::move(z_hi), hi, iterations};
}

ProjectionResult project_halfspace(const LegendreGeometry& geom, const Halfspace& h, const Point& x) {
  if (pairing(x, h.a) <= h.b) return {x, 0.0, 0, std::numeric_limits<double>::quiet_NaN()};
  ScalarSolve s = solve_affine_multiplier(geom, geom.gradient(x), h.a, h.b);
  return {std::move(s.point), s.lambda, s.iterations, std::numeric_limits<double>::quiet_NaN()};
}

ProjectionResult project_hyperplane(const LegendreGeometry& geom, const Hyperplane& h, const Point& x) {
  const double value = pairing(x, h.a);
  if (std::abs(value - h.b) <= 1e-12 * (1.0 + std::abs(h.b))) {
    return {x, 0.0, 0, std::numeric_limits<double>::quiet_NaN()};
  }
  const DualPoint xi = geom.gradient(x);
  if (value > h.b) {
    ScalarSolve s = solve_affine_multiplier(geom, xi, h.a, h.b);
    return {std::move(s.point), s.lambda, s.iterations, std::numeric_limits<double>::quiet_NaN()};
  }
  ScalarSolve s = solve_affine_multiplier(geom, xi, -h.a, -h.b);
  return {std::move(s.point), -s.lambda, s.iterations, std::numeric_limits<double>::quiet_NaN()};
}

ProjectionResult project_simplex(const LegendreGeometry& geom, const ScaledSimplex& simplex, const Point& x) {
  if (!geom.in_interior(x)) throw DomainViolation("simplex projection: point outside int dom f");
  if (dynamic_cast<const NegativeEntropy*>(&geom) != nullptr) {
    const double total = x.vec().sum();
    return {Point((simplex.s / total) * x.vec()), std::nullopt, 0, std::numeric_limits<double>::quiet_NaN()};
  }
  ProjectionResult r = project_hyperplane(geom, Hyperplane{DualPoint::constant(x.dim(), 1.0), simplex.s}, x);
  if ((r.point.vec().array() < 0.0).any()) {
    throw UnsupportedCombination("simplex projection under " + geom.name() +
                                 " leaves the nonnegative orthant; only neg_entropy is exact");
  }
  return r;
}

ProjectionResult project_intersection(const LegendreGeometry& geom, const Intersection& inter, const Point& x,
                                      const ProjectionOptions& options) {
  const std::size_t m = inter.members.size();
  if (m == 1) return bregman_project(geom, inter.members.front(), x, options);

  std::vector<DualPoint> corrections(m, DualPoint::zeros(x.dim()));
  Point current = x;
  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    const Point previous = current;
    for (std::size_t i = 0; i < m; ++i) {
      const DualPoint shifted = geom.gradient(current) + corrections[i];
      Point next = bregman_project(geom, inter.members[i], geom.conjugate_gradient(shifted), options).point;
      corrections[i] = shifted - geom.gradient(next);
      current = std::move(next);
    }
    if (bregman_distance(geom, current, previous) <= options.intersection_tol) {
      return {std::move(current), std::nullopt, sweep, std::numeric_limits<double>::quiet_NaN()};
    }
  }
  throw NonConvergence("intersection projection: sweep budget exhausted");
}

Point random_in_cube(const Point& center, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-radius, radius);
  Eigen::VectorXd v(center.dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = center[i] + u(rng);
  return Point(std::move(v));
}

Point euclidean_onto_plane(const Hyperplane& h, const Point& y) {
  const double excess = pairing(y, h.a) - h.b;
  return Point(y.vec() - (excess / h.a.vec().squaredNorm()) * h.a.vec());
}

// Candidate point for rejection sampling; exact for hyperplanes, boxes and simplices.
Point generate_candidate(const ConvexSet& set, const Point& center, double radius, std::mt19937_64& rng) {
  return std::visit(
      Overloaded{
          [&](const Hyperplane& h) { return euclidean_onto_plane(h, random_in_cube(center, radius, rng)); },
          [&](const Box& b) {
            Eigen::VectorXd v(b.lo.dim());
            for (Eigen::Index i = 0; i < v.size(); ++i) {
              v[i] = std::uniform_real_distribution<double>(b.lo[i], b.hi[i])(rng);
            }
            return Point(std::move(v));
          },
          [&](const ScaledSimplex& s) {
            std::exponential_distribution<double> e(1.0);
            Eigen::VectorXd v(center.dim());
            for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = e(rng);
            return Point((s.s / v.sum()) * v);
          },
          [&](const Intersection& inter) {
            // Prefer the most restrictive member as generator.
            const ConvexSet* generator = &inter.members.front();
            int best_rank = -1;
            for (const ConvexSet& member : inter.members) {
              int rank = 0;
              if (member.get_if<ScaledSimplex>()) rank = 4;
              else if (member.get_if<Hyperplane>()) rank = 3;
              else if (member.get_if<Box>()) rank = 2;
              else if (member.get_if<Intersection>()) rank = 1;
              if (rank > best_rank) {
                best_rank = rank;
                generator = &member;
              }
            }
            return generate_candidate(*generator, center, radius, rng);
          },
          [&](const auto&) { return random_in_cube(center, radius, rng); },
      },
      set.variant());
}

}  // namespace

bool Intersection::operator==(const Intersection& other) const { return members == other.members; }

ConvexSet::ConvexSet(Halfspace s) : v_(std::move(s)) {
  if (std::get<Halfspace>(v_).a.vec().isZero(0.0)) throw DomainViolation("halfspace: normal must be nonzero");
}

ConvexSet::ConvexSet(Hyperplane s) : v_(std::move(s)) {
  if (std::get<Hyperplane>(v_).a.vec().isZero(0.0)) throw DomainViolation("hyperplane: normal must be nonzero");
}

ConvexSet::ConvexSet(Box s) : v_(std::move(s)) {
  const Box& b = std::get<Box>(v_);
  if (b.lo.dim() != b.hi.dim() || b.lo.dim() == 0) throw DomainViolation("box: bounds must share a positive dimension");
  if ((b.lo.vec().array() > b.hi.vec().array()).any()) throw DomainViolation("box: lo must not exceed hi");
}

ConvexSet::ConvexSet(ScaledSimplex s) : v_(s) {
  if (!(s.s > 0.0) || !std::isfinite(s.s)) throw DomainViolation("scaled simplex: s must be positive");
}

ConvexSet::ConvexSet(Intersection s) : v_(std::move(s)) {
  const Intersection& inter = std::get<Intersection>(v_);
  if (inter.members.empty()) throw DomainViolation("intersection: member list is empty");
  std::optional<Eigen::Index> d;
  for (const ConvexSet& member : inter.members) {
    if (auto md = member.dim()) {
      if (d && *d != *md) throw DomainViolation("intersection: members disagree on dimension");
      d = md;
    }
  }
}

std::optional<Eigen::Index> ConvexSet::dim() const {
  return std::visit(Overloaded{
                        [](const Halfspace& h) -> std::optional<Eigen::Index> { return h.a.dim(); },
                        [](const Hyperplane& h) -> std::optional<Eigen::Index> { return h.a.dim(); },
                        [](const Box& b) -> std::optional<Eigen::Index> { return b.lo.dim(); },
                        [](const Intersection& inter) -> std::optional<Eigen::Index> {
                          for (const ConvexSet& member : inter.members) {
                            if (auto d = member.dim()) return d;
                          }
                          return std::nullopt;
                        },
                        [](const auto&) -> std::optional<Eigen::Index> { return std::nullopt; },
                    },
                    v_);
}

std::string ConvexSet::kind() const {
  return std::visit(Overloaded{
                        [](const WholeSpace&) { return std::string("whole_space"); },
                        [](const Halfspace&) { return std::string("halfspace"); },
                        [](const Hyperplane&) { return std::string("hyperplane"); },
                        [](const Box&) { return std::string("box"); },
                        [](const ScaledSimplex&) { return std::string("scaled_simplex"); },
                        [](const Intersection&) { return std::string("intersection"); },
                    },
                    v_);
}

double constraint_violation(const ConvexSet& set, const Point& x) {
  check_dim(set, x, "constraint_violation");
  return std::visit(Overloaded{
                        [](const WholeSpace&) { return 0.0; },
                        [&](const Halfspace& h) { return std::max(0.0, pairing(x, h.a) - h.b); },
                        [&](const Hyperplane& h) { return std::abs(pairing(x, h.a) - h.b); },
                        [&](const Box& b) {
                          const double below = (b.lo.vec() - x.vec()).maxCoeff();
                          const double above = (x.vec() - b.hi.vec()).maxCoeff();
                          return std::max({0.0, below, above});
                        },
                        [&](const ScaledSimplex& s) {
                          const double negative = -x.vec().minCoeff();
                          return std::max({0.0, negative, std::abs(x.vec().sum() - s.s)});
                        },
                        [&](const Intersection& inter) {
                          double worst = 0.0;
                          for (const ConvexSet& member : inter.members) {
                            worst = std::max(worst, constraint_violation(member, x));
                          }
                          return worst;
                        },
                    },
                    set.variant());
}

bool contains(const ConvexSet& set, const Point& x, double tol) { return constraint_violation(set, x) <= tol; }

ProjectionResult bregman_project(const LegendreGeometry& geom, const ConvexSet& set, const Point& x,
                                 const ProjectionOptions& options) {
  check_dim(set, x, "bregman_project");
  if (!geom.in_interior(x)) throw DomainViolation("bregman_project: point outside int dom f");
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  return std::visit(Overloaded{
                        [&](const WholeSpace&) { return ProjectionResult{x, std::nullopt, 0, kNaN}; },
                        [&](const Halfspace& h) { return project_halfspace(geom, h, x); },
                        [&](const Hyperplane& h) { return project_hyperplane(geom, h, x); },
                        [&](const Box& b) {
                          Point clamped(x.vec().cwiseMax(b.lo.vec()).cwiseMin(b.hi.vec()));
                          return ProjectionResult{std::move(clamped), std::nullopt, 0, kNaN};
                        },
                        [&](const ScaledSimplex& s) { return project_simplex(geom, s, x); },
                        [&](const Intersection& inter) { return project_intersection(geom, inter, x, options); },
                    },
                    set.variant());
}

double vi_residual(const LegendreGeometry& geom, const ConvexSet& set, const Point& x, const Point& z,
                   std::span<const Point> probes) {
  const DualPoint gap = geom.gradient(x) - geom.gradient(z);
  double worst = -std::numeric_limits<double>::infinity();
  for (const Point& y : probes) {
    if (!contains(set, y, 1e-9)) throw ProbeOutsideSet("vi_residual: probe lies outside the set");
    worst = std::max(worst, pairing(y - z, gap));
  }
  return worst;
}

double pythagoras_gap(const LegendreGeometry& geom, const ConvexSet& set, const Point& x, const Point& y) {
  const Point projected = bregman_project(geom, set, x).point;
  return bregman_distance(geom, y, x) - bregman_distance(geom, y, projected) - bregman_distance(geom, projected, x);
}

std::vector<Point> sample_probes(const ConvexSet& set, const Point& center, double radius, std::size_t count,
                                 std::mt19937_64& rng) {
  const Eigen::Index d = center.dim();
  std::vector<Point> probes;
  probes.reserve(count + 16);

  // vertices
  if (const Box* b = set.get_if<Box>(); b && d <= 10) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      Eigen::VectorXd v(d);
      for (Eigen::Index i = 0; i < d; ++i) v[i] = (mask >> i) & 1U ? b->hi[i] : b->lo[i];
      probes.emplace_back(std::move(v));
    }
  } else if (const ScaledSimplex* s = set.get_if<ScaledSimplex>()) {
    for (Eigen::Index i = 0; i < d; ++i) {
      Point v = Point::zeros(d);
      v[i] = s->s;
      probes.push_back(std::move(v));
    }
  }

  const std::size_t max_attempts = std::max<std::size_t>(count, 1) * 2000;
  std::size_t accepted = 0;
  for (std::size_t attempt = 0; attempt < max_attempts && accepted < count; ++attempt) {
    Point candidate = generate_candidate(set, center, radius, rng);
    if (contains(set, candidate, 1e-10)) {
      probes.push_back(std::move(candidate));
      ++accepted;
    }
  }
  return probes;
}

}  // namespace bregfix
