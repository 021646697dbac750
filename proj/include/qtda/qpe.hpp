#pragma once

// Betti estimation by phase estimation over the maximally mixed state.
//
// Register layout for a full simulation (qubit 0 = most significant bit):
//   [0, p)          precision register
//   [p, p + q)      system register (the padded Hamiltonian acts here)
//   [p + q, p + 2q) auxiliary qubits that purify I / 2^q
// Precision qubit i controls U^(2^(p-1-i)), so after the inverse QFT the
// register reads round(2^p * theta) for eigenphase theta = lambda / 2pi.

#include <cstdint>
#include <initializer_list>
#include <string>

#include <Eigen/Dense>

#include "qtda/spectral.hpp"
#include "qtda/statevector.hpp"

namespace qtda {

inline constexpr int kMaxPrecisionQubits = 16;
inline constexpr int kMaxTotalQubits = 24;

enum class EvolutionMode { Exact, Trotter };
enum class MixedStateMode { AuxiliaryCircuit, SampledBasis };

struct QpeConfig {
  int precision_qubits = 3;
  long shots = 1000;
  std::uint64_t seed = 0;
  EvolutionMode evolution = EvolutionMode::Exact;
  int trotter_steps = 1;
  MixedStateMode mixed_state = MixedStateMode::AuxiliaryCircuit;

  // Throws ArgumentError on out-of-range fields.
  void validate() const;
};

struct BettiEstimate {
  int q = 0;
  int p = 0;
  long shots = 0;       // 0 for the analytic estimator
  long zero_count = 0;
  double p_zero = 0.0;  // zero_count / shots, or the exact probability
  double beta_raw = 0.0;
  long beta_rounded = 0;
  bool analytic = false;

  // {"q":..,"p":..,"shots":..,"p_zero":..,"beta_raw":..,"beta":..}
  std::string to_json() const;
};

// Independent per-job seed from a tuple of integers (std::seed_seq mixing).
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

// Round half to even.
long round_half_even(double x);

// H on each system qubit, then CNOT(system i -> auxiliary i); 2q qubits.
StateVector prepare_mixed_state(int q);
Circuit mixed_state_circuit(int q);

// exp(i H) from the real symmetric eigendecomposition.
Eigen::MatrixXcd unitary_from_hamiltonian(const Eigen::MatrixXd& h);
inline Eigen::MatrixXcd unitary_from_hamiltonian(const PaddedHamiltonian& ham) {
  return unitary_from_hamiltonian(ham.matrix);
}

// First-order product of per-term exponentials exp(i c P / steps), repeated
// `steps` times. The identity term appears as an explicit global-phase gate.
Circuit trotter_circuit(const PauliDecomposition& decomp, int steps);

// Circuit for exp(i theta P) on `word`'s qubits.
Circuit pauli_exponential(const std::string& word, double theta);

// Qubits a configuration needs for a q-qubit system.
int required_qubits(int q, const QpeConfig& cfg);

BettiEstimate qpe_betti(const PaddedHamiltonian& ham, const QpeConfig& cfg);

// Pr(register = 0 | eigenphase theta) for a p-qubit register.
double zero_outcome_kernel(double theta, int p);

// Shot-free p(0) = 2^-q sum_j kernel(lambda_j / 2pi).
double analytic_zero_probability(const PaddedHamiltonian& ham, int p);
BettiEstimate analytic_betti(const PaddedHamiltonian& ham, int p);

// Smallest distance (mod 2pi) of a nonzero eigenvalue from 0; +inf if none.
double spectral_gap(const PaddedHamiltonian& ham, double zero_tol = 1e-9);
// True when every nonzero eigenphase sits more than one register bin from 0.
bool gap_resolved(const PaddedHamiltonian& ham, int p);

std::string to_string(EvolutionMode mode);
std::string to_string(MixedStateMode mode);
EvolutionMode parse_evolution_mode(const std::string& s);
MixedStateMode parse_mixed_state_mode(const std::string& s);

}  // namespace qtda
