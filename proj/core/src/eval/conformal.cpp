#include "qadv/eval/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qadv/error.hpp"

namespace qadv::eval {

double conformal_half_width(std::vector<double> abs_residuals, double level) {
  if (!(level > 0.0 && level < 1.0)) raise(Errc::InvalidArgument, "conformal level must lie in (0,1)");
  const auto n = abs_residuals.size();
  // The small offset keeps exact products such as 100 * 0.9 from rounding up.
  const auto k = static_cast<std::size_t>(std::ceil(static_cast<double>(n + 1) * level - 1e-9));
  if (k > n) return std::numeric_limits<double>::infinity();
  if (k == 0) return 0.0;
  std::nth_element(abs_residuals.begin(), abs_residuals.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   abs_residuals.end());
  return abs_residuals[k - 1];
}

ConformalReport conformal(const Vector& cal_residuals, const std::vector<double>& levels, const Vector& y_test,
                          const Vector& yhat_test) {
  if (cal_residuals.size() < kMinCalibration)
    raise(Errc::TooFewCalibration, "need at least " + std::to_string(kMinCalibration) + " calibration residuals, got " +
                                       std::to_string(cal_residuals.size()));
  if (y_test.size() != yhat_test.size()) raise(Errc::ShapeMismatch, "test targets and predictions differ in length");
  std::vector<double> sorted_levels = levels;
  std::sort(sorted_levels.begin(), sorted_levels.end());
  std::vector<double> abs_res(static_cast<std::size_t>(cal_residuals.size()));
  for (Index i = 0; i < cal_residuals.size(); ++i) abs_res[static_cast<std::size_t>(i)] = std::abs(cal_residuals(i));
  const Vector test_abs = (y_test - yhat_test).cwiseAbs();

  ConformalReport rep;
  for (double level : sorted_levels) {
    const double hw = conformal_half_width(abs_res, level);
    const double covered = test_abs.size() ? static_cast<double>((test_abs.array() <= hw).count()) /
                                                 static_cast<double>(test_abs.size())
                                           : 0.0;
    rep.levels.push_back(level);
    rep.half_widths.push_back(hw);
    rep.coverage.push_back(covered);
    if (level == 0.9 || level == 0.95) {
      IntervalSet set;
      set.level = level;
      set.lower = yhat_test.array() - hw;
      set.upper = yhat_test.array() + hw;
      rep.intervals.push_back(std::move(set));
    }
  }
  return rep;
}

}  // namespace qadv::eval
