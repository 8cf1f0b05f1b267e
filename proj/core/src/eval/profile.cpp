#include "qadv/eval/profile.hpp"

#include <chrono>
#include <cmath>

#include "qadv/error.hpp"
#include "qadv/qsim/statevector.hpp"
#include "qadv/train/bundle.hpp"

namespace qadv::eval {

std::vector<ProfileEntry> profile_qubits(train::ModelKind kind, const data::Dataset& train_set,
                                         const data::Dataset& test_set, const train::TrainConfig& cfg,
                                         const ProfileOptions& options) {
  if (options.n_min < 1 || options.n_max < options.n_min || options.n_max > qsim::kMaxQubits)
    raise(Errc::QubitOutOfRange, "qubit range must satisfy 1 <= min <= max <= " + std::to_string(qsim::kMaxQubits));
  if (options.latency_batch < 1 || options.latency_runs < 1)
    raise(Errc::InvalidArgument, "latency batch and run count must be positive");
  const Index test_rows = test_set.features.rows();
  if (test_rows == 0) raise(Errc::TooFewSamples, "profiling needs test rows");
  const double y_range = test_set.target.values.maxCoeff() - test_set.target.values.minCoeff();

  Matrix batch(options.latency_batch, test_set.features.cols());
  for (Index i = 0; i < options.latency_batch; ++i) batch.row(i) = test_set.features.values.row(i % test_rows);

  std::vector<ProfileEntry> out;
  for (int n = options.n_min; n <= options.n_max; ++n) {
    train::TrainConfig c = cfg;
    c.qnn.n_qubits = n;
    c.qae.n_qubits = n;
    const auto trained = train::train_model(kind, train_set, c);
    ProfileEntry e;
    e.n_qubits = n;
    e.circuit_evaluations = trained.history.circuit_evaluations;
    e.parameter_count = trained.models.qnn ? trained.models.qnn->parameter_count()
                                           : trained.models.autoencoder->parameter_count();
    e.metrics = regression_metrics(test_set.target.values, trained.models.predict(test_set.features.values), y_range);

    (void)trained.models.predict(batch);  // warm-up
    Vector per_sample_ms(options.latency_runs);
    for (int r = 0; r < options.latency_runs; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      const Vector p = trained.models.predict(batch);
      const auto t1 = std::chrono::steady_clock::now();
      if (p.size() != batch.rows()) raise(Errc::ShapeMismatch, "prediction count mismatch during profiling");
      per_sample_ms(r) = std::chrono::duration<double, std::milli>(t1 - t0).count() /
                         static_cast<double>(options.latency_batch);
    }
    e.latency_ms_mean = per_sample_ms.mean();
    e.latency_ms_std = options.latency_runs > 1
                           ? std::sqrt((per_sample_ms.array() - e.latency_ms_mean).square().sum() /
                                       static_cast<double>(options.latency_runs - 1))
                           : 0.0;
    out.push_back(e);
  }
  return out;
}

}  // namespace qadv::eval
