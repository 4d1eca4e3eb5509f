#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bregfix {

/// A parameter sequence n -> value, either constant or scale / (n + 1)^exponent.
///
/// Kept as data (not a closure) so the limit conditions can be checked
/// symbolically and configs can round-trip.
class Sequence {
 public:
  enum class Kind { Constant, Power };

  static Sequence constant(double value) { return Sequence(Kind::Constant, value, 0.0); }
  static Sequence power(double exponent, double scale = 1.0) { return Sequence(Kind::Power, scale, exponent); }

  [[nodiscard]] double operator()(std::size_t n) const;
  [[nodiscard]] Kind kind() const { return kind_; }
  /// The constant value, or the scale of a power sequence.
  [[nodiscard]] double value() const { return value_; }
  [[nodiscard]] double exponent() const { return exponent_; }

  [[nodiscard]] bool tends_to_zero() const;
  [[nodiscard]] bool sum_diverges() const;

  bool operator==(const Sequence&) const = default;

 private:
  Sequence(Kind kind, double value, double exponent) : kind_(kind), value_(value), exponent_(exponent) {}

  Kind kind_;
  double value_;
  double exponent_;
};

/// Coefficient sequences of the two-mapping and N-mapping schemes.
///
/// Defaults: alpha_n = 1/(n+1), beta = c = 1/2, theta = delta = gamma = 1/3,
/// and uniform family weights 1/(N+1).
struct ScheduleSet {
  Sequence alpha = Sequence::power(1.0);
  Sequence beta = Sequence::constant(0.5);
  Sequence c = Sequence::constant(0.5);
  Sequence theta = Sequence::constant(1.0 / 3.0);
  Sequence delta = Sequence::constant(1.0 / 3.0);
  Sequence gamma = Sequence::constant(1.0 / 3.0);
  /// theta_{n,0}, ..., theta_{n,N}; empty means uniform.
  std::vector<double> family_weights;

  /// Family weights for N mappings (N + 1 entries).
  [[nodiscard]] std::vector<double> weights_for(std::size_t mapping_count) const;

  bool operator==(const ScheduleSet&) const = default;
};

/// Describes why the coefficients at step n are invalid, or nullopt.
/// alpha_n must lie in (0, 1]; every other coefficient in (0, 1);
/// theta + delta + gamma and the family weights must sum to 1 within 1e-14.
/// `mapping_count` of 0 skips the family-weight checks.
std::optional<std::string> schedule_defect(const ScheduleSet& s, std::size_t n, std::size_t mapping_count);

/// Validates the schedule over its structural range: once for constant
/// sequences, otherwise for the first 1000 indices.
std::optional<std::string> schedule_defect(const ScheduleSet& s, std::size_t mapping_count);

/// Conditions the convergence result needs but the solver tolerates:
/// alpha_n -> 0, sum alpha_n = inf, and beta, c bounded away from 0.
std::vector<std::string> schedule_warnings(const ScheduleSet& s);

}  // namespace bregfix
