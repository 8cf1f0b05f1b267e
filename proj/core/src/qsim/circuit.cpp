#include "qadv/qsim/circuit.hpp"

#include <atomic>
#include <numbers>
#include <vector>

#include "qadv/error.hpp"

namespace qadv::qsim {
namespace {

std::atomic<std::uint64_t> g_evaluations{0};

void check_params(const CircuitSpec& spec, std::size_t count) {
  if (count != static_cast<std::size_t>(spec.parameter_count()))
    raise(Errc::ParamCountMismatch, "circuit over " + std::to_string(spec.n_qubits) + " qubits takes " +
                                        std::to_string(spec.parameter_count()) + " angles, got " +
                                        std::to_string(count));
}

}  // namespace

void CircuitSpec::validate() const {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    raise(Errc::QubitOutOfRange, "qubit count must lie in [1, " + std::to_string(kMaxQubits) + "]");
}

void run_circuit_into(const CircuitSpec& spec, std::span<const double> theta, StateVector& state) {
  spec.validate();
  check_params(spec, theta.size());
  if (state.qubits() != spec.n_qubits) raise(Errc::DimensionMismatch, "state register has the wrong width");
  g_evaluations.fetch_add(1, std::memory_order_relaxed);
  state.reset();
  if (spec.entangler == Entangler::ring_before) apply_cnot_ring(state);
  for (int j = 0; j < spec.n_qubits; ++j) {
    apply_ry(state, j, theta[2 * static_cast<std::size_t>(j)]);
    apply_rx(state, j, theta[2 * static_cast<std::size_t>(j) + 1]);
  }
  if (spec.entangler == Entangler::ring_after) apply_cnot_ring(state);
}

StateVector run_circuit(const CircuitSpec& spec, std::span<const double> theta) {
  spec.validate();
  StateVector state(spec.n_qubits);
  run_circuit_into(spec, theta, state);
  return state;
}

Matrix param_shift_jacobian(const CircuitSpec& spec, std::span<const double> theta) {
  spec.validate();
  check_params(spec, theta.size());
  constexpr double shift = std::numbers::pi / 2.0;
  const auto n = static_cast<Index>(spec.n_qubits);
  Matrix jac(n, spec.parameter_count());
  std::vector<double> shifted(theta.begin(), theta.end());
  StateVector state(spec.n_qubits);
  for (std::size_t k = 0; k < shifted.size(); ++k) {
    const double original = shifted[k];
    shifted[k] = original + shift;
    run_circuit_into(spec, shifted, state);
    const auto plus = expect_z(state);
    shifted[k] = original - shift;
    run_circuit_into(spec, shifted, state);
    const auto minus = expect_z(state);
    shifted[k] = original;
    for (Index j = 0; j < n; ++j)
      jac(j, static_cast<Index>(k)) = 0.5 * (plus[static_cast<std::size_t>(j)] - minus[static_cast<std::size_t>(j)]);
  }
  return jac;
}

Vector param_shift_grad(const CircuitSpec& spec, std::span<const double> theta) {
  return param_shift_jacobian(spec, theta).colwise().mean().transpose();
}

BatchExpectation quantum_forward_batch(const CircuitSpec& spec, const Matrix& theta) {
  spec.validate();
  if (theta.cols() != spec.parameter_count())
    raise(Errc::ParamCountMismatch, "angle matrix must have " + std::to_string(spec.parameter_count()) + " columns");
  const auto n = static_cast<Index>(spec.n_qubits);
  BatchExpectation out{Vector(theta.rows()), Matrix(theta.rows(), n)};
  StateVector state(spec.n_qubits);
  std::vector<double> row(static_cast<std::size_t>(theta.cols()));
  for (Index b = 0; b < theta.rows(); ++b) {
    for (Index k = 0; k < theta.cols(); ++k) row[static_cast<std::size_t>(k)] = theta(b, k);
    run_circuit_into(spec, row, state);
    const auto z = expect_z(state);
    double sum = 0.0;
    for (Index j = 0; j < n; ++j) {
      out.per_qubit(b, j) = z[static_cast<std::size_t>(j)];
      sum += z[static_cast<std::size_t>(j)];
    }
    out.h(b) = sum / static_cast<double>(n);
  }
  return out;
}

std::uint64_t circuit_evaluations() noexcept { return g_evaluations.load(std::memory_order_relaxed); }

}  // namespace qadv::qsim
