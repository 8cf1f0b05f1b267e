#include "qadv/eval/robustness.hpp"

#include "qadv/data/split.hpp"
#include "qadv/rng.hpp"

namespace qadv::eval {

std::vector<RobustnessEntry> robustness_suite(const xai::PredictFn& predict, const Matrix& x_test,
                                              const Vector& y_test, double magnitude, std::uint64_t seed,
                                              double y_range) {
  std::vector<RobustnessEntry> out;
  std::uint64_t stream = 0;
  for (auto kind : kAllNoiseKinds) {
    const auto noisy = inject_noise(kind, x_test, y_test, magnitude, derive_seed(seed, stream++));
    RobustnessEntry e;
    e.kind = kind;
    e.rows = noisy.x.rows();
    e.metrics = regression_metrics(noisy.y, predict(noisy.x), y_range);
    e.distribution = distributional_metrics(x_test, noisy.x, data::quantile_bins(noisy.y, 3));
    out.push_back(e);
  }
  return out;
}

}  // namespace qadv::eval
