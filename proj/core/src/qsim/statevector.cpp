#include "qadv/qsim/statevector.hpp"

#include <cmath>

#include "qadv/error.hpp"

namespace qadv::qsim {
namespace {

void check_qubit(const StateVector& s, int qubit) {
  if (qubit < 0 || qubit >= s.qubits())
    raise(Errc::QubitOutOfRange, "qubit " + std::to_string(qubit) + " outside [0, " + std::to_string(s.qubits()) + ")");
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    raise(Errc::QubitOutOfRange, "qubit count must lie in [1, " + std::to_string(kMaxQubits) + "]");
  amplitudes_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Amplitude> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    raise(Errc::QubitOutOfRange, "qubit count must lie in [1, " + std::to_string(kMaxQubits) + "]");
  if (amplitudes_.size() != (std::size_t{1} << n_qubits))
    raise(Errc::DimensionMismatch, "amplitude count must be 2^n");
}

double StateVector::norm() const noexcept {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

void StateVector::reset() {
  std::fill(amplitudes_.begin(), amplitudes_.end(), Amplitude{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

void apply_ry(StateVector& state, int qubit, double angle) {
  check_qubit(state, qubit);
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const std::size_t bit = std::size_t{1} << qubit;
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & bit) continue;
    const Amplitude a0 = amps[i];
    const Amplitude a1 = amps[i | bit];
    amps[i] = c * a0 - s * a1;
    amps[i | bit] = s * a0 + c * a1;
  }
}

void apply_rx(StateVector& state, int qubit, double angle) {
  check_qubit(state, qubit);
  const double c = std::cos(angle / 2.0);
  const Amplitude mis{0.0, -std::sin(angle / 2.0)};
  const std::size_t bit = std::size_t{1} << qubit;
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & bit) continue;
    const Amplitude a0 = amps[i];
    const Amplitude a1 = amps[i | bit];
    amps[i] = c * a0 + mis * a1;
    amps[i | bit] = mis * a0 + c * a1;
  }
}

void apply_cnot(StateVector& state, int control, int target) {
  check_qubit(state, control);
  check_qubit(state, target);
  if (control == target) raise(Errc::InvalidArgument, "CNOT control and target coincide");
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(amps[i], amps[i | tbit]);
  }
}

bool apply_cnot_ring(StateVector& state) {
  const int n = state.qubits();
  if (n < 2) return false;
  for (int k = 0; k < n; ++k) apply_cnot(state, k, (k + 1) % n);
  return true;
}

std::vector<double> expect_z(const StateVector& state) {
  std::vector<double> z(static_cast<std::size_t>(state.qubits()), 0.0);
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    for (int j = 0; j < state.qubits(); ++j) z[static_cast<std::size_t>(j)] += (i >> j) & 1U ? -p : p;
  }
  return z;
}

double expect_h(const StateVector& state) {
  const auto z = expect_z(state);
  double sum = 0.0;
  for (const double v : z) sum += v;
  return sum / static_cast<double>(z.size());
}

}  // namespace qadv::qsim
