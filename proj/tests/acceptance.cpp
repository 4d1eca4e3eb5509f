// One line per acceptance criterion; exit status 1 if any criterion fails.

#include "bregfix/fixtures.hpp"
#include "bregfix/mappings.hpp"
#include "bregfix/metrics.hpp"
#include "bregfix/solver.hpp"
#include "bregfix/verify.hpp"

#include <fmt/format.h>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace bregfix;

namespace {

constexpr std::uint64_t kSeed = 0x5eed;

struct Outcome {
  bool passed = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome suite_within(const SuiteReport& report, double limit) {
  Outcome o;
  o.passed = report.passed() && report.seconds < limit;
  o.detail = fmt::format("{} properties, {} failed, {:.2f} s (limit {} s)", report.results.size(),
                         report.failures().size(), report.seconds, limit);
  for (const std::string& f : report.failures()) o.detail += "; failed " + f;
  return o;
}

// Runs a fixture with every step audited and checks limit, audits and the running bound.
Outcome fixture_run(Fixture fx, double tol, double limit_seconds) {
  const auto start = std::chrono::steady_clock::now();
  fx.config.audit = true;
  const RunResult r = run_fixture(fx);
  const LegendreGeometry& geom = *fx.config.geom;
  const Point& p = *fx.config.reference_p;
  const double cap = std::max(bregman_distance(geom, p, fx.config.u), bregman_distance(geom, p, fx.config.x0));
  double worst_bound = -INFINITY;
  for (const TraceRecord& rec : r.trace) worst_bound = std::max(worst_bound, *rec.dist_to_ref - cap);
  const double err = distance_euclidean(r.final_point, p);
  const double secs = seconds_since(start);
  Outcome o;
  o.passed = err <= tol && r.audit_violations == 0 && r.audits_run == r.iterations && worst_bound <= 1e-9 &&
             r.iterations <= 200000 && secs < limit_seconds;
  o.detail = fmt::format("error {:.3e} (tol {:.0e}), {} iterations, {} audits, {} violations, max D(p,x_n) - bound "
                         "{:.3e}, {:.2f} s",
                         err, tol, r.iterations, r.audits_run, r.audit_violations, worst_bound, secs);
  return o;
}

Outcome criterion_6() {
  const auto start = std::chrono::steady_clock::now();
  Outcome family = fixture_run(halfspace_family_fixture(kSeed), 1e-3, 30.0);

  const Fixture fx = two_halfspace_fixture();
  SolverConfig matched = fx.config;
  matched.schedules.family_weights = {fx.config.schedules.theta(0), fx.config.schedules.delta(0),
                                      fx.config.schedules.gamma(0)};
  IterationState a = initial_state(fx.config), b = initial_state(matched);
  double worst = 0.0;
  for (std::size_t n = 0; n < fx.config.max_iter; ++n) {
    a = step_two(fx.config, fx.mappings[0], fx.mappings[1], a);
    b = step_family(matched, fx.mappings, b);
    worst = std::max(worst, distance_euclidean(a.x, b.x));
  }
  const double secs = seconds_since(start);
  Outcome o;
  o.passed = family.passed && worst <= 1e-12 && secs < 30.0;
  o.detail = fmt::format("N=5: {}; N=2 matched weights: max per-iterate gap {:.3e} over {} steps; total {:.2f} s",
                         family.detail, worst, fx.config.max_iter, secs);
  return o;
}

Outcome criterion_7() {
  Fixture first = two_halfspace_fixture();
  Fixture second = two_halfspace_fixture();
  second.config.u = second.config.x0 = Point{1.0, -0.5};
  second.config.reference_p = Point{0.0, -0.5};
  const double oracle_gap = distance_euclidean(*first.config.reference_p, *second.config.reference_p);
  const RunResult r1 = run_fixture(first);
  const RunResult r2 = run_fixture(second);
  const double e1 = distance_euclidean(r1.final_point, *first.config.reference_p);
  const double e2 = distance_euclidean(r2.final_point, *second.config.reference_p);
  const double cross = distance_euclidean(r1.final_point, r2.final_point);
  Outcome o;
  o.passed = oracle_gap >= 0.1 && e1 <= 1e-3 && e2 <= 1e-3 && cross >= 0.09;
  o.detail = fmt::format("u1=(1,1) error {:.3e}, u2=(1,-0.5) error {:.3e}, oracle gap {:.3f}, cross-distance {:.4f}",
                         e1, e2, oracle_gap, cross);
  return o;
}

Outcome criterion_8() {
  std::ostringstream sink;
  const std::vector<GeometryPtr> sabotaged{sabotage_conjugate_gradient(make_squared_norm())};
  const SuiteReport geometry = verify_geometry(sabotaged, kSeed);
  bool inverse_named = false;
  for (const std::string& f : geometry.failures()) inverse_named = inverse_named || f.find("inverse-pair") != std::string::npos;

  const FixedPointMapping doubling("doubling", [](const Point& x) { return 2.0 * x; });
  const std::vector<Point> xs{Point{1.0, 1.0}};
  const double violation = bqne_violation(*make_squared_norm(), doubling, Point{0.0, 0.0}, xs);

  const GeometryPtr ent = make_negative_entropy();
  SolverConfig cfg;
  cfg.geom = ent;
  cfg.ambient = ScaledSimplex{1.0};
  cfg.u = cfg.x0 = Point{0.3, 0.7};
  const FixedPointMapping t1 = projection_mapping(ent, Box{Point{0.5, 0.0}, Point{1.0, 1.0}});
  const FixedPointMapping t2 = identity_mapping();
  const Point p{0.6, 0.4};
  IterationState s = initial_state(cfg);
  std::size_t honest_failures = 0, corrupted_failures = 0;
  for (int n = 0; n < 50; ++n) {
    IterationState next = step_two(cfg, t1, t2, s);
    IterationState corrupted = next;
    corrupted.x = corrupted.h;
    if (!audit_step(*ent, p, cfg, s, next).clean()) ++honest_failures;
    if (!audit_step(*ent, p, cfg, s, corrupted).clean()) ++corrupted_failures;
    s = std::move(next);
  }

  Outcome o;
  o.passed = !geometry.passed() && inverse_named && std::abs(violation - 6.0) <= 1e-12 && honest_failures == 0 &&
             corrupted_failures > 0;
  o.detail = fmt::format("sabotaged geometry suite {} (inverse-pair named: {}); doubling-map violation {:.12g}; "
                         "skipped ambient projection: {} of 50 audits failed (honest steps: {})",
                         geometry.passed() ? "passed" : "failed", inverse_named ? "yes" : "no", violation,
                         corrupted_failures, honest_failures);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"geometry suite", [] { return suite_within(verify_geometry(kSeed), 5.0); }},
      {"metrics suite", [] { return suite_within(verify_metrics(kSeed), 5.0); }},
      {"projection suite", [] { return suite_within(verify_projection(kSeed), 10.0); }},
      {"two-halfspace fixture", [] { return fixture_run(two_halfspace_fixture(), 1e-3, 10.0); }},
      {"entropy simplex/box fixture", [] { return fixture_run(entropy_simplex_box_fixture(), 1e-3, 10.0); }},
      {"five-halfspace family and scheme subsumption", criterion_6},
      {"anchor dependence", criterion_7},
      {"negative controls", criterion_8},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::cout << fmt::format("criterion {}: {} - {}: {}", i + 1, o.passed ? "PASS" : "FAIL", criteria[i].first,
                             o.detail)
              << std::endl;
  }
  std::cout << fmt::format("{} of {} criteria passed", criteria.size() - failed, criteria.size()) << std::endl;
  return failed == 0 ? 0 : 1;
}
