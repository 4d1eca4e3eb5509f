#include "bregfix/schedule.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace bregfix {

double Sequence::operator()(std::size_t n) const {
  if (kind_ == Kind::Constant) return value_;
  return value_ * std::pow(static_cast<double>(n) + 1.0, -exponent_);
}

bool Sequence::tends_to_zero() const {
  if (kind_ == Kind::Constant) return value_ == 0.0;
  return exponent_ > 0.0 || value_ == 0.0;
}

bool Sequence::sum_diverges() const {
  if (value_ == 0.0) return false;
  if (kind_ == Kind::Constant) return true;
  return exponent_ <= 1.0;
}

std::vector<double> ScheduleSet::weights_for(std::size_t mapping_count) const {
  if (!family_weights.empty()) return family_weights;
  return std::vector<double>(mapping_count + 1, 1.0 / static_cast<double>(mapping_count + 1));
}

namespace {

bool open_unit(double v) { return v > 0.0 && v < 1.0; }

std::string describe(const char* name, std::size_t n, double v) {
  std::ostringstream os;
  os << name << "_" << n << " = " << v;
  return os.str();
}

bool is_constant(const ScheduleSet& s) {
  using K = Sequence::Kind;
  return s.alpha.kind() == K::Constant && s.beta.kind() == K::Constant && s.c.kind() == K::Constant &&
         s.theta.kind() == K::Constant && s.delta.kind() == K::Constant && s.gamma.kind() == K::Constant;
}

}  // namespace

std::optional<std::string> schedule_defect(const ScheduleSet& s, std::size_t n, std::size_t mapping_count) {
  const double alpha = s.alpha(n);
  if (!(alpha > 0.0 && alpha <= 1.0)) return describe("alpha", n, alpha) + " is outside (0, 1]";
  const std::pair<const char*, const Sequence*> open[] = {
      {"beta", &s.beta}, {"c", &s.c}, {"theta", &s.theta}, {"delta", &s.delta}, {"gamma", &s.gamma}};
  for (const auto& [name, seq] : open) {
    const double v = (*seq)(n);
    if (!open_unit(v)) return describe(name, n, v) + " is outside (0, 1)";
  }
  const double sum = s.theta(n) + s.delta(n) + s.gamma(n);
  if (std::abs(sum - 1.0) > 1e-14) {
    std::ostringstream os;
    os << "theta + delta + gamma must equal 1 (got " << sum << " at n = " << n << ")";
    return os.str();
  }
  if (mapping_count > 0) {
    const std::vector<double> w = s.weights_for(mapping_count);
    if (w.size() != mapping_count + 1) {
      std::ostringstream os;
      os << "family_weights needs " << mapping_count + 1 << " entries, got " << w.size();
      return os.str();
    }
    double total = 0.0;
    for (double v : w) {
      if (!open_unit(v)) return "family weight " + std::to_string(v) + " is outside (0, 1)";
      total += v;
    }
    if (std::abs(total - 1.0) > 1e-14) {
      std::ostringstream os;
      os << "family weights must sum to 1 (got " << total << ")";
      return os.str();
    }
  }
  return std::nullopt;
}

std::optional<std::string> schedule_defect(const ScheduleSet& s, std::size_t mapping_count) {
  const std::size_t horizon = is_constant(s) ? 1 : 1000;
  for (std::size_t n = 0; n < horizon; ++n) {
    if (auto defect = schedule_defect(s, n, mapping_count)) return defect;
  }
  return std::nullopt;
}

std::vector<std::string> schedule_warnings(const ScheduleSet& s) {
  std::vector<std::string> warnings;
  if (!s.alpha.tends_to_zero()) warnings.emplace_back("alpha_n does not tend to 0");
  if (!s.alpha.sum_diverges()) warnings.emplace_back("sum of alpha_n is finite");
  if (s.beta.tends_to_zero()) warnings.emplace_back("beta_n (1 - beta_n) tends to 0");
  if (s.c.tends_to_zero()) warnings.emplace_back("c_n (1 - c_n) tends to 0");
  return warnings;
}

}  // namespace bregfix
