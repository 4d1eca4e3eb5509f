#include "bregfix/solver.hpp"

#include "bregfix/errors.hpp"
#include "bregfix/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace bregfix {

namespace {

constexpr std::size_t kSparseAuditPeriod = 100;
constexpr std::size_t kMaxReportedAudits = 16;
constexpr double kMembershipTol = 1e-8;

void check_schedule(const ScheduleSet& s, std::size_t n, std::size_t mapping_count) {
  if (auto defect = schedule_defect(s, n, mapping_count)) throw ScheduleViolation(*defect);
}

void check_config(const SolverConfig& cfg) {
  if (!cfg.geom) throw DomainViolation("solver: no geometry");
  const Eigen::Index d = cfg.u.dim();
  if (d == 0 || cfg.x0.dim() != d) throw DomainViolation("solver: anchor and start must share a positive dimension");
  if (auto ad = cfg.ambient.dim(); ad && *ad != d) throw DomainViolation("solver: ambient set dimension mismatch");
  for (const Point* p : {&cfg.u, &cfg.x0}) {
    if (!cfg.geom->in_interior(*p)) throw DomainViolation("solver: anchor/start outside int dom f");
    if (!contains(cfg.ambient, *p, kMembershipTol)) throw DomainViolation("solver: anchor/start outside the ambient set");
  }
  if (cfg.reference_p && cfg.reference_p->dim() != d) throw DomainViolation("solver: reference point dimension mismatch");
}

// Anchored tail shared by both schemes: h = grad f*(alpha grad f(u) + (1 - alpha) grad f(w)), x+ = P_C h.
void finish_step(const SolverConfig& cfg, const DualPoint& w_dual, double alpha, IterationState& next) {
  const LegendreGeometry& geom = *cfg.geom;
  next.w = geom.conjugate_gradient(w_dual);
  const DualPoint h_dual = alpha * geom.gradient(cfg.u) + (1.0 - alpha) * w_dual;
  next.h = geom.conjugate_gradient(h_dual);
  next.x = cfg.ambient.is_whole_space() ? next.h : bregman_project(geom, cfg.ambient, next.h).point;
}

}  // namespace

double TraceRecord::residual_max() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

std::vector<AuditEntry> AuditReport::violations() const {
  std::vector<AuditEntry> out;
  std::copy_if(entries.begin(), entries.end(), std::back_inserter(out), [](const AuditEntry& e) { return e.violated(); });
  return out;
}

std::string to_string(RunStatus status) { return status == RunStatus::Converged ? "Converged" : "IterBudget"; }

IterationState initial_state(const SolverConfig& cfg) {
  IterationState s;
  s.n = 0;
  s.x = cfg.x0;
  return s;
}

IterationState step_two(const SolverConfig& cfg, const FixedPointMapping& t1, const FixedPointMapping& t2,
                        const IterationState& state) {
  const std::size_t n = state.n;
  check_schedule(cfg.schedules, n, 0);
  const LegendreGeometry& geom = *cfg.geom;
  const ScheduleSet& s = cfg.schedules;
  const double alpha = s.alpha(n), beta = s.beta(n), c = s.c(n);
  const double theta = s.theta(n), delta = s.delta(n), gamma = s.gamma(n);

  IterationState next;
  next.n = n + 1;
  next.images = {t1(state.x), t2(state.x)};

  const DualPoint gx = geom.gradient(state.x);
  const DualPoint gz = c * gx + (1.0 - c) * geom.gradient(next.images[1]);
  const DualPoint gy = beta * gx + (1.0 - beta) * geom.gradient(next.images[0]);
  const Point z = geom.conjugate_gradient(gz);
  const Point y = geom.conjugate_gradient(gy);
  const DualPoint gw = theta * gx + delta * geom.gradient(y) + gamma * geom.gradient(z);
  next.branches = {y, z};
  finish_step(cfg, gw, alpha, next);
  return next;
}

IterationState step_family(const SolverConfig& cfg, std::span<const FixedPointMapping> mappings,
                           const IterationState& state) {
  const std::size_t n = state.n;
  const std::size_t count = mappings.size();
  if (count == 0) throw DomainViolation("step_family: need at least one mapping");
  check_schedule(cfg.schedules, n, count);
  const LegendreGeometry& geom = *cfg.geom;
  const double alpha = cfg.schedules.alpha(n), beta = cfg.schedules.beta(n);
  const std::vector<double> weights = cfg.schedules.weights_for(count);

  IterationState next;
  next.n = n + 1;
  next.images.reserve(count);
  next.branches.reserve(count);

  const DualPoint gx = geom.gradient(state.x);
  DualPoint gw = weights[0] * gx;
  for (std::size_t i = 0; i < count; ++i) {
    next.images.push_back(mappings[i](state.x));
    const DualPoint gy = beta * gx + (1.0 - beta) * geom.gradient(next.images.back());
    next.branches.push_back(geom.conjugate_gradient(gy));
    gw += weights[i + 1] * geom.gradient(next.branches.back());
  }
  finish_step(cfg, gw, alpha, next);
  return next;
}

AuditReport audit_step(const LegendreGeometry& geom, const Point& p, const SolverConfig& cfg,
                       const IterationState& before, const IterationState& after) {
  AuditReport report;
  report.n = before.n;
  const double alpha = cfg.schedules.alpha(before.n);
  auto dist = [&](const Point& q) { return bregman_distance(geom, p, q); };

  const double d_x = dist(before.x);
  const double d_u = dist(cfg.u);
  const double d_w = dist(after.w);
  const double d_h = dist(after.h);
  const double d_next = dist(after.x);

  for (std::size_t i = 0; i < after.branches.size(); ++i) {
    std::string name = after.branches.size() == 2 && i == 1 ? "D(p,z_n) <= D(p,x_n)"
                       : after.branches.size() == 2         ? "D(p,y_n) <= D(p,x_n)"
                                                            : "D(p,y_n," + std::to_string(i + 1) + ") <= D(p,x_n)";
    report.entries.push_back({std::move(name), d_x - dist(after.branches[i])});
  }
  report.entries.push_back({"D(p,w_n) <= D(p,x_n)", d_x - d_w});
  report.entries.push_back({"D(p,h_n) <= a D(p,u) + (1-a) D(p,w_n)", alpha * d_u + (1.0 - alpha) * d_w - d_h});
  report.entries.push_back({"D(p,x_n+1) <= D(p,h_n)", d_h - d_next});
  report.entries.push_back({"D(p,x_n+1) <= a D(p,u) + (1-a) D(p,x_n)", alpha * d_u + (1.0 - alpha) * d_x - d_next});
  report.entries.push_back({"D(p,x_n+1) <= max(D(p,u), D(p,x_0))", std::max(d_u, dist(cfg.x0)) - d_next});
  report.entries.push_back({"x_n+1 in C", -constraint_violation(cfg.ambient, after.x), kMembershipTol});
  return report;
}

void require_clean(const AuditReport& report) {
  const std::vector<AuditEntry> bad = report.violations();
  if (bad.empty()) return;
  std::ostringstream os;
  os << "audit failed at n = " << report.n << ":";
  for (const AuditEntry& e : bad) os << " [" << e.name << ", slack " << e.slack << "]";
  throw AuditFailure(os.str());
}

namespace {

template <class Step>
RunResult run_scheme(const SolverConfig& cfg, std::size_t mapping_count, Step&& step) {
  check_config(cfg);
  const LegendreGeometry& geom = *cfg.geom;
  RunResult result;
  result.warnings = schedule_warnings(cfg.schedules);

  const std::optional<Point>& p = cfg.reference_p;
  std::optional<double> d_u;
  if (p) d_u = bregman_distance(geom, *p, cfg.u);

  IterationState state = initial_state(cfg);
  const std::size_t every = std::max<std::size_t>(cfg.trace_every, 1);
  while (state.n < cfg.max_iter) {
    IterationState next = step(state);

    TraceRecord rec;
    rec.n = state.n;
    rec.residuals.reserve(mapping_count);
    for (const Point& image : next.images) rec.residuals.push_back(distance_euclidean(state.x, image));
    rec.step_size = distance_euclidean(next.x, state.x);
    if (p) {
      const double alpha = cfg.schedules.alpha(state.n);
      const double d_x = bregman_distance(geom, *p, state.x);
      rec.dist_to_ref = d_x;
      rec.fejer_gap = alpha * *d_u + (1.0 - alpha) * d_x - bregman_distance(geom, *p, next.x);
      if (cfg.audit || state.n % kSparseAuditPeriod == 0) {
        AuditReport report = audit_step(geom, *p, cfg, state, next);
        ++result.audits_run;
        if (!report.clean()) {
          ++result.audit_violations;
          if (result.failed_audits.size() < kMaxReportedAudits) result.failed_audits.push_back(std::move(report));
        }
      }
    }
    const bool done = rec.residual_max() <= cfg.residual_tol && rec.step_size <= cfg.residual_tol;
    if (state.n % every == 0 || done || next.n == cfg.max_iter) result.trace.push_back(std::move(rec));
    state = std::move(next);
    if (done) {
      result.status = RunStatus::Converged;
      break;
    }
  }
  result.iterations = state.n;
  result.final_point = std::move(state.x);
  return result;
}

}  // namespace

RunResult run_two(const SolverConfig& cfg, const FixedPointMapping& t1, const FixedPointMapping& t2) {
  return run_scheme(cfg, 2, [&](const IterationState& s) { return step_two(cfg, t1, t2, s); });
}

RunResult run_family(const SolverConfig& cfg, std::span<const FixedPointMapping> mappings) {
  return run_scheme(cfg, mappings.size(), [&](const IterationState& s) { return step_family(cfg, mappings, s); });
}

ProjectionResult reference_limit(const LegendreGeometry& geom, std::span<const ConvexSet> fixed_sets, const Point& u,
                                 const ReferenceOptions& options) {
  ConvexSet target;
  if (fixed_sets.size() == 1) {
    target = fixed_sets.front();
  } else if (fixed_sets.size() > 1) {
    target = ConvexSet(Intersection{std::vector<ConvexSet>(fixed_sets.begin(), fixed_sets.end())});
  }
  ProjectionResult result = bregman_project(geom, target, u, options.projection);

  std::mt19937_64 rng(options.seed);
  const double radius = std::max(1.0, 2.0 * distance_euclidean(u, result.point));
  const std::vector<Point> probes = sample_probes(target, result.point, radius, options.probes, rng);
  result.vi_residual = probes.empty() ? 0.0 : vi_residual(geom, target, u, result.point, probes);
  if (!(result.vi_residual <= options.certify_tol)) {
    throw NonConvergence("reference limit failed variational certification (residual " +
                         std::to_string(result.vi_residual) + ")");
  }
  return result;
}

}  // namespace bregfix
