#pragma once

// Dense statevector simulator. Qubit 0 is the most significant bit of the
// basis index throughout.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qtda/kernels.hpp"

namespace qtda {

using Amplitude = kernels::Amplitude;

struct Gate {
  enum class Kind { Unitary, Measure };

  Kind kind = Kind::Unitary;
  std::string name;
  Eigen::MatrixXcd matrix;    // 2^t x 2^t; 1x1 for a (controlled) phase
  std::vector<int> targets;   // targets[0] is the block's most significant qubit
  std::vector<int> controls;

  static Gate hadamard(int q);
  static Gate pauli_x(int q);
  static Gate s(int q);
  static Gate rx(int q, double angle);
  static Gate ry(int q, double angle);
  static Gate rz(int q, double angle);
  static Gate phase(int q, double angle);  // diag(1, e^{i angle})
  static Gate global_phase(double angle);
  static Gate cnot(int control, int target);
  static Gate controlled_phase(int control, int target, double angle);
  static Gate swap(int a, int b);
  static Gate dense(Eigen::MatrixXcd matrix, std::vector<int> targets, std::string name = "U");
  static Gate measure(std::vector<int> qubits);
};

class StateVector {
 public:
  explicit StateVector(int num_qubits);  // |0...0>
  static StateVector basis(int num_qubits, std::size_t index);
  static StateVector from_amplitudes(std::vector<Amplitude> amps);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  Amplitude operator[](std::size_t i) const { return amps_[i]; }

  void apply(const Gate& gate);
  double norm_squared() const;

  // Marginal distribution of the leading `count` qubits.
  std::vector<double> leading_probabilities(int count) const;

  // Density matrix of the leading `keep` qubits, tracing out the rest.
  Eigen::MatrixXcd reduced_density_matrix(int keep) const;

 private:
  int num_qubits_;
  std::vector<Amplitude> amps_;
};

class Circuit {
 public:
  explicit Circuit(int num_qubits) : num_qubits_(num_qubits) {}

  int num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  // Validates qubit indices and unitarity (within 1e-9).
  Circuit& add(Gate gate);
  Circuit& append(const Circuit& other);

  // Same gates with qubit i moved to map[i] inside a `total_qubits` register and
  // `extra_controls` added to every unitary gate. Global phases become
  // controlled phases, which is what makes them observable.
  Circuit embedded(const std::vector<int>& map, int total_qubits,
                   const std::vector<int>& extra_controls = {}) const;

  void apply(StateVector& state) const;

  // Dense 2^n x 2^n unitary, column j = circuit applied to |j>.
  Eigen::MatrixXcd unitary() const;

 private:
  int num_qubits_;
  std::vector<Gate> gates_;
};

// Inverse QFT on `register_qubits` (first is the most significant) as an
// exact H + controlled-phase network with the final swaps.
Circuit inverse_qft(int num_qubits, const std::vector<int>& register_qubits);

}  // namespace qtda
