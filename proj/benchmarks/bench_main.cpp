#include <benchmark/benchmark.h>

#include <vector>

#include "qadv/models/hybrid_qnn.hpp"
#include "qadv/nn/mlp.hpp"
#include "qadv/qsim/circuit.hpp"
#include "qadv/rng.hpp"
#include "qadv/xai/explainer.hpp"

using namespace qadv;

namespace {

std::vector<double> random_angles(Index n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> theta(static_cast<std::size_t>(n));
  for (auto& t : theta) t = rng.uniform(-3.0, 3.0);
  return theta;
}

Matrix random_matrix(Index r, Index c, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(r, c);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform();
  return m;
}

void BM_Circuit(benchmark::State& state) {
  const qsim::CircuitSpec spec{static_cast<int>(state.range(0)), qsim::Entangler::ring_after};
  const auto theta = random_angles(spec.parameter_count(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(qsim::expect_h(qsim::run_circuit(spec, theta)));
}
BENCHMARK(BM_Circuit)->DenseRange(1, 10, 3);

void BM_ParamShift(benchmark::State& state) {
  const qsim::CircuitSpec spec{static_cast<int>(state.range(0)), qsim::Entangler::ring_after};
  const auto theta = random_angles(spec.parameter_count(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(qsim::param_shift_grad(spec, theta));
}
BENCHMARK(BM_ParamShift)->DenseRange(1, 7, 2);

void BM_QnnForward(benchmark::State& state) {
  Rng rng(3);
  const auto model = models::HybridQnn::create(models::QnnConfig{}, rng);
  const Matrix x = random_matrix(state.range(0), 8, 4);
  for (auto _ : state) benchmark::DoNotOptimize(models::qnn_predict(model, x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_QnnForward)->Arg(1)->Arg(32)->Arg(256);

void BM_TrunkForwardBackward(benchmark::State& state) {
  Rng rng(5);
  const auto mlp = nn::Mlp::init(models::qnn_trunk_spec(models::QnnConfig{}), rng);
  const Matrix x = random_matrix(state.range(0), 8, 6);
  const Matrix g = Matrix::Ones(state.range(0), mlp.spec().output_dim());
  for (auto _ : state) {
    Rng drop(7);
    const auto fwd = mlp.forward(x, nn::Mode::train, &drop);
    benchmark::DoNotOptimize(mlp.backward(fwd.trace, g));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrunkForwardBackward)->Arg(32)->Arg(256);

void BM_Explain(benchmark::State& state) {
  const Matrix train = random_matrix(500, 8, 8);
  xai::ExplainerConfig cfg;
  cfg.n_samples = state.range(0);
  const auto ex = xai::fit_explainer(train, cfg);
  const xai::PredictFn f = [](const Matrix& z) -> Vector { return z.rowwise().sum(); };
  const Vector x0 = train.row(0).transpose();
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(xai::explain(ex, f, x0, seed++));
}
BENCHMARK(BM_Explain)->Arg(100)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
