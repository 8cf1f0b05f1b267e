#pragma once

#include "qadv/types.hpp"

namespace qadv::eval {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sided paired t-test on a - b.
TestResult paired_t_test(const Vector& a, const Vector& b);

/// Two-sided Wilcoxon signed-rank test on a - b. Zero differences are
/// dropped; the statistic is W+ - W- so swapping the samples negates it.
/// Exact null distribution up to 25 non-zero pairs, normal approximation
/// with tie correction beyond. All-zero differences give p = 1.
TestResult wilcoxon_signed_rank(const Vector& a, const Vector& b);

/// Student-t quantile, e.g. t_quantile(0.975, 2) = 4.3027.
double t_quantile(double p, double dof);

struct ConfidenceInterval {
  double mean = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double half_width = 0.0;
};

/// mean +- t_{(1+level)/2, n-1} * s / sqrt(n).
ConfidenceInterval mean_ci(const Vector& values, double level = 0.95);

}  // namespace qadv::eval
