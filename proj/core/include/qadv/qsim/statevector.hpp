#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qadv::qsim {

using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 20;

/// Dense pure state over n qubits. Qubit 0 is the least significant bit of
/// the basis-state index.
class StateVector {
 public:
  /// |0...0>
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, std::vector<Amplitude> amplitudes);

  [[nodiscard]] int qubits() const noexcept { return n_qubits_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return amplitudes_.size(); }
  [[nodiscard]] std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
  [[nodiscard]] std::span<Amplitude> amplitudes() noexcept { return amplitudes_; }
  [[nodiscard]] const Amplitude& operator[](std::size_t i) const noexcept { return amplitudes_[i]; }
  [[nodiscard]] Amplitude& operator[](std::size_t i) noexcept { return amplitudes_[i]; }

  [[nodiscard]] double norm() const noexcept;
  void reset();

 private:
  int n_qubits_;
  std::vector<Amplitude> amplitudes_;
};

void apply_ry(StateVector& state, int qubit, double angle);
void apply_rx(StateVector& state, int qubit, double angle);
void apply_cnot(StateVector& state, int control, int target);

/// CNOT(0->1), CNOT(1->2), ..., CNOT(n-1->0). A single qubit has no ring;
/// the state is left unchanged and false is returned.
bool apply_cnot_ring(StateVector& state);

/// <Z_j> for every qubit j.
std::vector<double> expect_z(const StateVector& state);

/// Expectation of H = (1/n) sum_j Z_j.
double expect_h(const StateVector& state);

}  // namespace qadv::qsim
