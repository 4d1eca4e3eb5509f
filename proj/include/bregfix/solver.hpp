#pragma once

#include "bregfix/convex_set.hpp"
#include "bregfix/coordinates.hpp"
#include "bregfix/legendre.hpp"
#include "bregfix/mappings.hpp"
#include "bregfix/schedule.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bregfix {

struct SolverConfig {
  GeometryPtr geom;
  /// The set C that every iterate is projected onto.
  ConvexSet ambient;
  /// Anchor u.
  Point u;
  Point x0;
  ScheduleSet schedules;
  std::size_t max_iter = 200000;
  double residual_tol = 1e-8;
  /// Audit every step; otherwise every 100th step (only with reference_p).
  bool audit = false;
  /// A certified common fixed point, normally P_F(u). Enables the distance
  /// trace, the anchor-gap trace and the audits.
  std::optional<Point> reference_p;
  /// Keep one trace record every `trace_every` steps.
  std::size_t trace_every = 1;
};

/// State after n steps: `x` is x_n. The remaining fields are the
/// intermediates of the step that produced x_n from x_{n-1}: the images
/// T_i x_{n-1}, the branch points (y, z for two mappings; y_i for a family),
/// w and h. They are empty for the initial state.
struct IterationState {
  std::size_t n = 0;
  Point x;
  std::vector<Point> images;
  std::vector<Point> branches;
  Point w;
  Point h;

  [[nodiscard]] const Point& y() const { return branches.at(0); }
  [[nodiscard]] const Point& z() const { return branches.at(1); }
};

struct TraceRecord {
  std::size_t n = 0;
  /// |x_n - T_i x_n| per mapping.
  std::vector<double> residuals;
  /// D_f(p, x_n).
  std::optional<double> dist_to_ref;
  /// alpha_n D_f(p, u) + (1 - alpha_n) D_f(p, x_n) - D_f(p, x_{n+1}).
  std::optional<double> fejer_gap;
  /// |x_{n+1} - x_n|.
  double step_size = 0.0;

  [[nodiscard]] double residual_max() const;
};

struct AuditEntry {
  std::string name;
  /// rhs - lhs of the inequality; negative means violated.
  double slack = 0.0;
  double tolerance = 1e-9;
  [[nodiscard]] bool violated() const { return slack < -tolerance; }
};

struct AuditReport {
  std::size_t n = 0;
  std::vector<AuditEntry> entries;

  [[nodiscard]] std::vector<AuditEntry> violations() const;
  [[nodiscard]] bool clean() const { return violations().empty(); }
};

enum class RunStatus { Converged, IterBudget };

std::string to_string(RunStatus status);

struct RunResult {
  Point final_point;
  std::vector<TraceRecord> trace;
  RunStatus status = RunStatus::IterBudget;
  std::size_t iterations = 0;
  std::size_t audits_run = 0;
  std::size_t audit_violations = 0;
  /// First few failing audits, for reporting.
  std::vector<AuditReport> failed_audits;
  std::vector<std::string> warnings;
};

IterationState initial_state(const SolverConfig& cfg);

/// One step of the two-mapping scheme:
///   z = grad f*(c grad f(x) + (1 - c) grad f(T2 x))
///   y = grad f*(beta grad f(x) + (1 - beta) grad f(T1 x))
///   w = grad f*(theta grad f(x) + delta grad f(y) + gamma grad f(z))
///   h = grad f*(alpha grad f(u) + (1 - alpha) grad f(w))
///   x_{n+1} = P_C h.
/// Throws ScheduleViolation for invalid coefficients at n.
IterationState step_two(const SolverConfig& cfg, const FixedPointMapping& t1, const FixedPointMapping& t2,
                        const IterationState& state);

/// One step of the N-mapping scheme with branches
/// y_i = grad f*(beta grad f(x) + (1 - beta) grad f(T_i x)) and
/// w = grad f*(theta_0 grad f(x) + sum_i theta_i grad f(y_i)).
IterationState step_family(const SolverConfig& cfg, std::span<const FixedPointMapping> mappings,
                           const IterationState& state);

/// Checks, against the fixed point p, every inequality one step must satisfy:
/// each branch and w are no farther from p than x_n, the dual-average bound
/// on h, the projection bound, the anchored bound
/// D(p, x_{n+1}) <= alpha D(p, u) + (1 - alpha) D(p, x_n), the running bound
/// max{D(p, u), D(p, x_0)}, and membership of x_{n+1} in C.
AuditReport audit_step(const LegendreGeometry& geom, const Point& p, const SolverConfig& cfg,
                       const IterationState& before, const IterationState& after);

/// Throws AuditFailure listing the violated entries, if any.
void require_clean(const AuditReport& report);

RunResult run_two(const SolverConfig& cfg, const FixedPointMapping& t1, const FixedPointMapping& t2);
RunResult run_family(const SolverConfig& cfg, std::span<const FixedPointMapping> mappings);

struct ReferenceOptions {
  std::size_t probes = 200;
  std::uint64_t seed = 0x5eed;
  double certify_tol = 1e-7;
  ProjectionOptions projection;
};

/// P_F(u) for F the intersection of `fixed_sets`, certified by the
/// variational inequality over random feasible probes. The returned result
/// carries the measured residual; throws NonConvergence if certification
/// fails.
ProjectionResult reference_limit(const LegendreGeometry& geom, std::span<const ConvexSet> fixed_sets, const Point& u,
                                 const ReferenceOptions& options = {});

}  // namespace bregfix
