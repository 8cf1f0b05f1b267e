#pragma once

#include <cstdint>
#include <span>

#include "qadv/qsim/statevector.hpp"
#include "qadv/types.hpp"

namespace qadv::qsim {

enum class Entangler { none, ring_before, ring_after };

/// Angle-encoding ansatz: per qubit j, Ry(theta[2j]) then Rx(theta[2j+1]),
/// with an optional CNOT ring before or after the rotation layer.
struct CircuitSpec {
  int n_qubits = 4;
  Entangler entangler = Entangler::none;

  [[nodiscard]] Index parameter_count() const noexcept { return 2 * static_cast<Index>(n_qubits); }
  void validate() const;
};

StateVector run_circuit(const CircuitSpec& spec, std::span<const double> theta);
/// Same as run_circuit but reuses `state` (which must have spec.n_qubits).
void run_circuit_into(const CircuitSpec& spec, std::span<const double> theta, StateVector& state);

/// d<H>/d theta_k = [f(theta_k + pi/2) - f(theta_k - pi/2)] / 2, 4n circuit runs.
Vector param_shift_grad(const CircuitSpec& spec, std::span<const double> theta);

/// Parameter-shift Jacobian of the per-qubit expectations, n x 2n.
Matrix param_shift_jacobian(const CircuitSpec& spec, std::span<const double> theta);

struct BatchExpectation {
  Vector h;          // B
  Matrix per_qubit;  // B x n
};

/// Row-wise circuit evaluation of a B x 2n angle matrix.
BatchExpectation quantum_forward_batch(const CircuitSpec& spec, const Matrix& theta);

/// Process-wide count of circuit executions (forward runs plus shifted runs).
std::uint64_t circuit_evaluations() noexcept;

}  // namespace qadv::qsim
