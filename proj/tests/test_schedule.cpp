#include "bregfix/schedule.hpp"

#include <doctest.h>

#include <algorithm>
#include <string>

using namespace bregfix;

namespace {

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

}  // namespace

TEST_CASE("sequence values") {
  const Sequence harmonic = Sequence::power(1.0);
  CHECK(harmonic(0) == 1.0);
  CHECK(harmonic(3) == doctest::Approx(0.25));
  CHECK(Sequence::power(0.5, 2.0)(3) == doctest::Approx(1.0));
  CHECK(Sequence::constant(0.4)(1000) == 0.4);
}

TEST_CASE("symbolic limit conditions") {
  CHECK(Sequence::power(1.0).tends_to_zero());
  CHECK(Sequence::power(1.0).sum_diverges());
  CHECK(Sequence::power(0.5).sum_diverges());
  CHECK_FALSE(Sequence::power(2.0).sum_diverges());
  CHECK_FALSE(Sequence::constant(0.5).tends_to_zero());
  CHECK(Sequence::constant(0.5).sum_diverges());
}

TEST_CASE("default schedules are valid and silent") {
  const ScheduleSet s;
  CHECK_FALSE(schedule_defect(s, 2).has_value());
  CHECK_FALSE(schedule_defect(s, 5).has_value());
  CHECK(schedule_warnings(s).empty());
  CHECK(s.weights_for(4) == std::vector<double>(5, 0.2));
}

TEST_CASE("convex weights that do not sum to 1 are a defect") {
  ScheduleSet s;
  s.theta = s.delta = s.gamma = Sequence::constant(0.3);
  const auto defect = schedule_defect(s, 2);
  REQUIRE(defect.has_value());
  CHECK(defect->find("theta + delta + gamma must equal 1") != std::string::npos);
}

TEST_CASE("coefficients outside their ranges are defects") {
  ScheduleSet s;
  s.beta = Sequence::constant(1.0);
  CHECK(schedule_defect(s, 2).has_value());
  s = ScheduleSet{};
  s.alpha = Sequence::power(1.0, 2.0);
  CHECK(schedule_defect(s, 0, 2).has_value());
  CHECK_FALSE(schedule_defect(s, 1, 2).has_value());
  s = ScheduleSet{};
  s.family_weights = {0.5, 0.5};
  CHECK(schedule_defect(s, 2).has_value());
  s.family_weights = {0.5, 0.25, 0.25};
  CHECK_FALSE(schedule_defect(s, 2).has_value());
  s.family_weights = {0.5, 0.3, 0.3};
  CHECK(schedule_defect(s, 2).has_value());
}

TEST_CASE("warnings for schedules outside the convergence hypotheses") {
  ScheduleSet s;
  s.alpha = Sequence::constant(0.5);
  CHECK(has(schedule_warnings(s), "alpha_n does not tend to 0"));
  s.alpha = Sequence::power(2.0);
  CHECK(has(schedule_warnings(s), "sum of alpha_n is finite"));
  s = ScheduleSet{};
  s.beta = Sequence::power(1.0, 0.5);
  CHECK(schedule_warnings(s).size() == 1);
}
