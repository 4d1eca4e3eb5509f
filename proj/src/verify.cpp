#include "bregfix/verify.hpp"

#include "bregfix/convex_set.hpp"
#include "bregfix/errors.hpp"
#include "bregfix/fixtures.hpp"
#include "bregfix/mappings.hpp"
#include "bregfix/metrics.hpp"
#include "bregfix/solver.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <random>

namespace bregfix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tracks the worst observation of a quantity that must stay below (or above) a bound.
class Check {
 public:
  Check(std::string name, double threshold, bool upper = true)
      : name_(std::move(name)), threshold_(threshold), upper_(upper), worst_(upper ? -kInf : kInf) {}

  void observe(double value) {
    if (std::isnan(value)) {
      saw_nan_ = true;
      return;
    }
    worst_ = upper_ ? std::max(worst_, value) : std::min(worst_, value);
  }
  void fail(std::string why) { error_ = std::move(why); }

  [[nodiscard]] PropertyResult result() const {
    PropertyResult r;
    r.name = name_;
    r.threshold = threshold_;
    r.relation = upper_ ? "<=" : ">=";
    r.measured = worst_;
    r.passed = error_.empty() && !saw_nan_ && (upper_ ? worst_ <= threshold_ : worst_ >= threshold_);
    if (!error_.empty()) r.detail = error_;
    if (saw_nan_) r.detail = "NaN observed";
    return r;
  }

 private:
  std::string name_;
  double threshold_;
  bool upper_;
  double worst_;
  bool saw_nan_ = false;
  std::string error_;
};

// Runs `body`, turning a library exception into a failed property.
void guarded(Check& check, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    check.fail(e.what());
  }
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Eigen::VectorXd vector(Eigen::Index d, double lo, double hi) {
    Eigen::VectorXd v(d);
    for (Eigen::Index i = 0; i < d; ++i) v[i] = uniform(lo, hi);
    return v;
  }
  Eigen::VectorXd gaussian(Eigen::Index d) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXd v(d);
    for (Eigen::Index i = 0; i < d; ++i) v[i] = g(rng_);
    return v;
  }
  std::vector<double> simplex_weights(std::size_t k) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> w(k);
    double total = 0.0;
    for (double& v : w) total += (v = e(rng_));
    for (double& v : w) v /= total;
    return w;
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

bool on_orthant(const LegendreGeometry& geom) { return !geom.in_domain(Point::constant(1, -1.0)); }

// Interior point bounded away from the entropy boundary by `margin`.
Point interior_point(const LegendreGeometry& geom, Sampler& s, Eigen::Index d, double margin = 0.1) {
  return on_orthant(geom) ? Point(s.vector(d, margin, 5.0)) : Point(s.vector(d, -3.0, 3.0));
}

double finite_difference_error(const LegendreGeometry& geom, const Point& x) {
  constexpr double h = 1e-5;
  const DualPoint g = geom.gradient(x);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.dim(); ++i) {
    Point plus = x, minus = x;
    plus[i] += h;
    minus[i] -= h;
    const double fd = (geom.value(plus) - geom.value(minus)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - g[i]));
  }
  return worst;
}

// Euclidean projections used as independent oracles for sq_norm.
Point euclid_halfspace(const Halfspace& h, const Point& x) {
  const double excess = pairing(x, h.a) - h.b;
  if (excess <= 0.0) return x;
  return Point(x.vec() - (excess / h.a.vec().squaredNorm()) * h.a.vec());
}

Point euclid_hyperplane(const Hyperplane& h, const Point& x) {
  const double excess = pairing(x, h.a) - h.b;
  return Point(x.vec() - (excess / h.a.vec().squaredNorm()) * h.a.vec());
}

std::string tag(const LegendreGeometry& geom, std::string_view property) {
  return fmt::format("{}/{}", geom.name(), property);
}

template <class Fn>
SuiteReport timed(std::string suite, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.suite = std::move(suite);
  fn(report);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// Geometry wrapper with a deliberately wrong grad f*.
class ScaledConjugateGeometry final : public LegendreGeometry {
 public:
  ScaledConjugateGeometry(GeometryPtr base, double factor) : base_(std::move(base)), factor_(factor) {}

  [[nodiscard]] std::string name() const override { return base_->name() + "~sabotaged"; }
  [[nodiscard]] std::vector<double> params() const override { return base_->params(); }
  [[nodiscard]] bool in_domain(const Point& x) const override { return base_->in_domain(x); }
  [[nodiscard]] bool in_interior(const Point& x) const override { return base_->in_interior(x); }

 protected:
  [[nodiscard]] double do_value(const Point& x) const override { return base_->value(x); }
  [[nodiscard]] DualPoint do_gradient(const Point& x) const override { return base_->gradient(x); }
  [[nodiscard]] double do_conjugate_value(const DualPoint& y) const override { return base_->conjugate_value(y); }
  [[nodiscard]] Point do_conjugate_gradient(const DualPoint& y) const override {
    return factor_ * base_->conjugate_gradient(y);
  }
  [[nodiscard]] Eigen::VectorXd do_hessian_diagonal(const Point& x) const override {
    return base_->hessian_diagonal(x);
  }
  [[nodiscard]] Eigen::VectorXd do_conjugate_hessian_diagonal(const DualPoint& y) const override {
    return factor_ * base_->conjugate_hessian_diagonal(y);
  }

 private:
  GeometryPtr base_;
  double factor_;
};

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed; });
}

std::vector<std::string> SuiteReport::failures() const {
  std::vector<std::string> names;
  for (const PropertyResult& r : results) {
    if (!r.passed) names.push_back(r.name);
  }
  return names;
}

std::vector<GeometryPtr> standard_geometries() {
  return {make_squared_norm(), make_power(3.0), make_negative_entropy()};
}

GeometryPtr sabotage_conjugate_gradient(GeometryPtr base, double factor) {
  return std::make_shared<const ScaledConjugateGeometry>(std::move(base), factor);
}

// ---------------------------------------------------------------------------

SuiteReport verify_geometry(std::span<const GeometryPtr> geometries, std::uint64_t seed) {
  return timed("geometry", [&](SuiteReport& report) {
    Sampler s(seed);
    constexpr Eigen::Index kDims[] = {1, 2, 10, 50};
    constexpr int kPoints = 200;
    for (const GeometryPtr& gp : geometries) {
      const LegendreGeometry& geom = *gp;
      Check inverse(tag(geom, "inverse-pair"), 1e-9);
      Check fenchel(tag(geom, "fenchel-equality"), 1e-9);
      Check gradient(tag(geom, "finite-difference-gradient"), 1e-5);
      Check convex(tag(geom, "strict-convexity"), 1e-12, false);
      guarded(inverse, [&] {
        for (Eigen::Index d : kDims) {
          for (int k = 0; k < kPoints; ++k) {
            const Point x = interior_point(geom, s, d);
            const DualPoint g = geom.gradient(x);
            inverse.observe(distance_euclidean(geom.conjugate_gradient(g), x) / (1.0 + x.norm()));
            const DualPoint y(s.vector(d, -3.0, 3.0));
            inverse.observe((geom.gradient(geom.conjugate_gradient(y)) - y).norm() / (1.0 + y.norm()));

            const double fx = geom.value(x);
            fenchel.observe(std::abs(fx + geom.conjugate_value(g) - pairing(x, g)) / (1.0 + std::abs(fx)));
            gradient.observe(finite_difference_error(geom, x));

            const Point x2 = interior_point(geom, s, d);
            if (distance_euclidean(x, x2) >= 1e-3) {
              const double t = s.uniform(0.05, 0.95);
              const Point mid(t * x.vec() + (1.0 - t) * x2.vec());
              convex.observe(t * fx + (1.0 - t) * geom.value(x2) - geom.value(mid));
            }
          }
        }
      });
      for (const Check* c : {&inverse, &fenchel, &gradient, &convex}) report.results.push_back(c->result());
    }
  });
}

SuiteReport verify_geometry(std::uint64_t seed) {
  const std::vector<GeometryPtr> geoms = standard_geometries();
  return verify_geometry(geoms, seed);
}

SuiteReport verify_metrics(std::uint64_t seed) {
  return timed("metrics", [&](SuiteReport& report) {
    Sampler s(seed);
    for (const GeometryPtr& gp : standard_geometries()) {
      const LegendreGeometry& geom = *gp;
      Check nonneg(tag(geom, "distance-nonnegative"), 0.0, false);
      Check identity(tag(geom, "distance-identity"), 1e-12);
      Check separation(tag(geom, "distance-separates-points"), 1e-12, false);
      Check v_identity(tag(geom, "v-equals-distance"), 1e-10);
      Check perturbation(tag(geom, "v-perturbation-gap"), -1e-10, false);
      Check dual_avg(tag(geom, "dual-average-inequality"), 1e-10);
      Check v_convex(tag(geom, "v-convex-in-dual-argument"), 1e-10);
      Check modulus(tag(geom, "total-convexity-modulus-positive"), 0.0, false);
      guarded(nonneg, [&] {
        for (int k = 0; k < 1000; ++k) {
          const Eigen::Index d = s.integer(1, 10);
          const Point x = interior_point(geom, s, d);
          const Point y = interior_point(geom, s, d);
          const double dyx = bregman_distance(geom, y, x);
          nonneg.observe(dyx);
          identity.observe(bregman_distance(geom, x, x));
          if (distance_euclidean(x, y) > 1e-9) separation.observe(dyx);

          const DualPoint xs(s.vector(d, -2.0, 2.0));
          const DualPoint ys(s.vector(d, -2.0, 2.0));
          v_identity.observe(std::abs(v_function(geom, x, xs) - bregman_distance(geom, x, geom.conjugate_gradient(xs))));
          perturbation.observe(v_perturbation_gap(geom, x, xs, ys));
          const double t = s.uniform(0.0, 1.0);
          v_convex.observe(v_function(geom, x, t * xs + (1.0 - t) * ys) - t * v_function(geom, x, xs) -
                           (1.0 - t) * v_function(geom, x, ys));
        }
        for (int k = 0; k < 500; ++k) {
          const Eigen::Index d = s.integer(1, 10);
          const std::size_t m = static_cast<std::size_t>(s.integer(1, 5));
          const std::vector<double> w = s.simplex_weights(m);
          std::vector<Point> pts;
          double rhs = 0.0;
          const Point z = interior_point(geom, s, d);
          for (std::size_t i = 0; i < m; ++i) {
            pts.push_back(interior_point(geom, s, d));
            rhs += w[i] * bregman_distance(geom, z, pts.back());
          }
          dual_avg.observe(bregman_distance(geom, z, dual_average(geom, w, pts)) - rhs);
        }
        for (int k = 0; k < 10; ++k) {
          const Eigen::Index d = s.integer(1, 4);
          const Point x = on_orthant(geom) ? Point(s.vector(d, 1.0, 4.0)) : Point(s.vector(d, -3.0, 3.0));
          for (double t : {0.1, 0.5}) {
            ModulusOptions options;
            options.seed = seed + static_cast<std::uint64_t>(k);
            modulus.observe(total_convexity_modulus(geom, x, t, options));
          }
        }
      });
      // positivity is strict
      PropertyResult mod = modulus.result();
      mod.passed = mod.passed && mod.measured > 0.0;
      for (const Check* c : {&nonneg, &identity, &separation, &v_identity, &perturbation, &dual_avg, &v_convex}) {
        report.results.push_back(c->result());
      }
      report.results.push_back(mod);
    }

    Check special("sq_norm/squared-euclidean-specialization", 1e-10);
    const SquaredNorm sq;
    for (int k = 0; k < 1000; ++k) {
      const Eigen::Index d = s.integer(1, 10);
      const Point x(s.vector(d, -3.0, 3.0)), y(s.vector(d, -3.0, 3.0));
      special.observe(std::abs(bregman_distance(sq, y, x) - (x.vec() - y.vec()).squaredNorm()) /
                      (1.0 + x.vec().squaredNorm() + y.vec().squaredNorm()));
    }
    report.results.push_back(special.result());
  });
}

SuiteReport verify_projection(std::uint64_t seed) {
  return timed("projection", [&](SuiteReport& report) {
    Sampler s(seed);
    const SquaredNorm sq;

    Check oracle_half("sq_norm/halfspace-matches-euclidean", 1e-9);
    Check oracle_plane("sq_norm/hyperplane-matches-euclidean", 1e-9);
    Check oracle_box("sq_norm/box-matches-euclidean", 1e-9);
    Check simplex_sum("neg_entropy/simplex-normalization", 1e-12);
    Check simplex_shape("neg_entropy/simplex-proportional", 1e-12);
    Check vi("all/variational-certificate", 1e-7);
    Check pyth("all/pythagoras-gap", -1e-9, false);
    Check idem("all/idempotence", 1e-9);
    Check inter_vi("neg_entropy/intersection-variational-certificate", 1e-7);

    auto certify = [&](const LegendreGeometry& geom, const ConvexSet& set, const Point& x, const Point& z) {
      std::vector<Point> probes = sample_probes(set, z, 2.0, 50, s.engine());
      if (probes.empty()) throw Infeasible("no feasible probes");
      vi.observe(vi_residual(geom, set, x, z, probes));
      for (const Point& y : probes) {
        if (geom.in_domain(y)) pyth.observe(pythagoras_gap(geom, set, x, y));
      }
      idem.observe(distance_euclidean(bregman_project(geom, set, z).point, z));
    };

    guarded(vi, [&] {
      for (int k = 0; k < 100; ++k) {
        const Eigen::Index d = s.integer(1, 10);
        const Point x(s.vector(d, -3.0, 3.0));

        const Halfspace h{DualPoint(s.gaussian(d)), s.uniform(-1.0, 1.0)};
        const Point ph = bregman_project(sq, h, x).point;
        oracle_half.observe(distance_euclidean(ph, euclid_halfspace(h, x)));
        certify(sq, h, x, ph);

        const Hyperplane hp{DualPoint(s.gaussian(d)), s.uniform(-1.0, 1.0)};
        oracle_plane.observe(distance_euclidean(bregman_project(sq, hp, x).point, euclid_hyperplane(hp, x)));

        const Eigen::VectorXd lo = s.vector(d, -2.0, 0.0);
        const Box b{Point(lo), Point(lo + s.vector(d, 0.1, 2.0))};
        const Point pb = bregman_project(sq, b, x).point;
        Eigen::VectorXd expect = x.vec();
        for (Eigen::Index i = 0; i < d; ++i) expect[i] = std::min(std::max(expect[i], b.lo[i]), b.hi[i]);
        oracle_box.observe((pb.vec() - expect).norm());
        certify(sq, b, x, pb);
      }

      for (const GeometryPtr& gp : {make_power(3.0), make_power(1.5), make_negative_entropy()}) {
        const LegendreGeometry& geom = *gp;
        for (int k = 0; k < 50; ++k) {
          const Eigen::Index d = s.integer(1, 6);
          const Point x = interior_point(geom, s, d);
          // Halfspace through a random interior point, cutting off x.
          const Point inside = interior_point(geom, s, d, 0.2);
          const DualPoint a(s.gaussian(d));
          const Halfspace h{a, pairing(inside, a)};
          if (pairing(x, a) > h.b) certify(geom, h, x, bregman_project(geom, h, x).point);
          const Eigen::VectorXd lo = on_orthant(geom) ? s.vector(d, 0.1, 1.0) : s.vector(d, -2.0, 0.0);
          const Box b{Point(lo), Point(lo + s.vector(d, 0.1, 2.0))};
          certify(geom, b, x, bregman_project(geom, b, x).point);
        }
      }

      const NegativeEntropy ent;
      for (int k = 0; k < 100; ++k) {
        const Eigen::Index d = s.integer(1, 10);
        const Point x(s.vector(d, 0.01, 5.0));
        const ScaledSimplex simplex{s.uniform(0.5, 3.0)};
        const Point p = bregman_project(ent, simplex, x).point;
        simplex_sum.observe(std::abs(p.vec().sum() - simplex.s) / simplex.s);
        const Eigen::ArrayXd ratio = p.vec().array() / x.vec().array();
        simplex_shape.observe((ratio - ratio.mean()).abs().maxCoeff() / ratio.mean());
        certify(ent, simplex, x, p);
      }

      for (int k = 0; k < 20; ++k) {
        const Eigen::Index d = s.integer(2, 5);
        const Point x(s.vector(d, 0.05, 2.0));
        const double cap = 2.0 / static_cast<double>(d);
        const ConvexSet inter(Intersection{{ScaledSimplex{1.0}, Box{Point::constant(d, 0.05), Point::constant(d, cap)}}});
        const Point p = bregman_project(ent, inter, x).point;
        std::vector<Point> probes = sample_probes(inter, p, 1.0, 50, s.engine());
        inter_vi.observe(vi_residual(ent, inter, x, p, probes));
      }
    });
    for (const Check* c : {&oracle_half, &oracle_plane, &oracle_box, &simplex_sum, &simplex_shape, &vi, &pyth, &idem,
                           &inter_vi}) {
      report.results.push_back(c->result());
    }
  });
}

SuiteReport verify_mappings(std::uint64_t seed) {
  return timed("mappings", [&](SuiteReport& report) {
    Sampler s(seed);
    Check fixed("all/fixed-set-consistency", 1e-8);
    Check bqne("all/bqne-certified", 1e-9);
    Check resolvent("all/resolvent-residual", 1e-10);
    Check negative("negative-control/doubling-map-detected", 1e-3, false);

    guarded(fixed, [&] {
      for (const GeometryPtr& gp : standard_geometries()) {
        const LegendreGeometry& geom = *gp;
        const bool orthant = on_orthant(geom);
        const Eigen::Index d = 3;

        std::vector<FixedPointMapping> mappings;
        const Point anchor = orthant ? Point{0.6, 0.3, 0.4} : Point{0.5, -0.5, 1.0};
        const DualPoint a{1.0, 2.0, -1.0};
        mappings.push_back(projection_mapping(gp, Halfspace{a, pairing(anchor, a)}));
        mappings.push_back(projection_mapping(gp, Box{Point(anchor.vec().array() - 0.2), Point(anchor.vec().array() + 0.3)}));
        if (orthant) mappings.push_back(projection_mapping(gp, ScaledSimplex{anchor.vec().sum()}));
        Eigen::MatrixXd m(3, 3);
        m << 2.0, 1.0, 0.0, -1.0, 1.0, 0.0, 0.0, 0.0, 0.5;
        const MonotoneAffineOperator op(m, -(m * anchor.vec()));
        mappings.push_back(resolvent_mapping(gp, op, 0.7));

        for (const FixedPointMapping& t : mappings) {
          const ConvexSet& f = *t.fixed_set();
          const std::vector<Point> members = sample_probes(f, anchor, 0.15, 100, s.engine());
          for (const Point& y : members) {
            if (geom.in_interior(y)) fixed.observe(distance_euclidean(t(y), y));
          }
          std::vector<Point> xs;
          for (int k = 0; k < 500; ++k) xs.push_back(Point(anchor.vec() + (orthant ? s.vector(d, -0.25, 2.0) : s.vector(d, -3.0, 3.0))));
          bqne.observe(bqne_violation(geom, t, anchor, xs));
        }

        for (int k = 0; k < 200; ++k) {
          const Point x = interior_point(geom, s, d);
          const Point z = solve_resolvent(geom, op, 0.7, x);
          const DualPoint gx = geom.gradient(x);
          const Eigen::VectorXd r = geom.gradient(z).vec() + 0.7 * op(z.vec()) - gx.vec();
          resolvent.observe(r.norm() / (1.0 + gx.norm()));
        }
      }
      const SquaredNorm sq;
      const FixedPointMapping doubling("doubling", [](const Point& x) { return 2.0 * x; });
      const Point origin{0.0, 0.0};
      const std::vector<Point> xs{Point{1.0, 1.0}};
      negative.observe(bqne_violation(sq, doubling, origin, xs));
    });
    for (const Check* c : {&fixed, &bqne, &resolvent, &negative}) report.results.push_back(c->result());
  });
}

SuiteReport verify_solver(std::uint64_t seed) {
  return timed("solver", [&](SuiteReport& report) {
    auto run_checked = [&](Fixture fx, double limit_tol) {
      Check limit(fx.name + "/limit", limit_tol);
      Check audits(fx.name + "/audit-violations", 0.0);
      Check bounded(fx.name + "/bounded-distance", 1e-9);
      guarded(limit, [&] {
        fx.config.audit = true;
        const RunResult r = run_fixture(fx);
        const Point& p = *fx.config.reference_p;
        limit.observe(distance_euclidean(r.final_point, p));
        audits.observe(static_cast<double>(r.audit_violations));
        const double cap = std::max(bregman_distance(*fx.config.geom, p, fx.config.u),
                                    bregman_distance(*fx.config.geom, p, fx.config.x0));
        for (const TraceRecord& rec : r.trace) bounded.observe(*rec.dist_to_ref - cap);
      });
      for (const Check* c : {&limit, &audits, &bounded}) report.results.push_back(c->result());
    };
    run_checked(two_halfspace_fixture(), 1e-3);
    run_checked(entropy_simplex_box_fixture(), 1e-3);
    run_checked(halfspace_family_fixture(seed), 1e-3);
    run_checked(mixed_family_fixture(), 1e-6);

    Check subsume("entropy_simplex_box/family-reproduces-two-scheme", 1e-12);
    guarded(subsume, [&] {
      const Fixture fx = entropy_simplex_box_fixture();
      SolverConfig family = fx.config;
      family.schedules.family_weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
      IterationState a = initial_state(fx.config), b = initial_state(family);
      for (int n = 0; n < 2000; ++n) {
        a = step_two(fx.config, fx.mappings[0], fx.mappings[1], a);
        b = step_family(family, fx.mappings, b);
        subsume.observe(distance_euclidean(a.x, b.x));
      }
    });
    report.results.push_back(subsume.result());

    Check anchor("two_halfspaces/anchor-sensitivity", 0.09, false);
    guarded(anchor, [&] {
      Fixture first = two_halfspace_fixture();
      Fixture second = two_halfspace_fixture();
      second.config.u = Point{1.0, -0.5};
      second.config.x0 = second.config.u;
      second.config.reference_p = Point{0.0, -0.5};
      const RunResult r1 = run_fixture(first);
      const RunResult r2 = run_fixture(second);
      if (distance_euclidean(r1.final_point, *first.config.reference_p) > 1e-3 ||
          distance_euclidean(r2.final_point, *second.config.reference_p) > 1e-3) {
        anchor.fail("a run missed its own limit");
      }
      anchor.observe(distance_euclidean(r1.final_point, r2.final_point));
    });
    report.results.push_back(anchor.result());
  });
}

bool is_suite_name(std::string_view suite) {
  return suite == "geometry" || suite == "metrics" || suite == "projection" || suite == "mappings" ||
         suite == "solver" || suite == "all";
}

void print_report(const SuiteReport& report, std::ostream& out) {
  for (const PropertyResult& r : report.results) {
    out << fmt::format("[{}] {}/{}  measured={:.3e} {} {:.1e}", r.passed ? "PASS" : "FAIL", report.suite, r.name,
                       r.measured, r.relation, r.threshold);
    if (!r.detail.empty()) out << "  (" << r.detail << ")";
    out << '\n';
  }
  out << fmt::format("suite {}: {} ({:.2f} s)\n", report.suite, report.passed() ? "PASS" : "FAIL", report.seconds);
}

std::vector<SuiteReport> run_suites(std::string_view suite, std::uint64_t seed, std::ostream& out,
                                    std::span<const GeometryPtr> geometry_override) {
  std::vector<SuiteReport> reports;
  const bool all = suite == "all";
  auto emit = [&](SuiteReport r) {
    print_report(r, out);
    reports.push_back(std::move(r));
  };
  if (all || suite == "geometry") {
    emit(geometry_override.empty() ? verify_geometry(seed) : verify_geometry(geometry_override, seed));
  }
  if (all || suite == "metrics") emit(verify_metrics(seed));
  if (all || suite == "projection") emit(verify_projection(seed));
  if (all || suite == "mappings") emit(verify_mappings(seed));
  if (all || suite == "solver") emit(verify_solver(seed));
  return reports;
}

}  // namespace bregfix
