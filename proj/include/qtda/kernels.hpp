#pragma once

// Data-parallel inner loops. Every kernel has a plain serial reference in
// `serial` and an OpenMP version in `parallel`. Element-wise kernels are
// bit-identical across the two; reductions agree to rounding and do not
// depend on the thread count.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qtda::kernels {

using Amplitude = std::complex<double>;

// Qubit i addresses bit (num_qubits - 1 - i) of the basis index.
struct BlockAction {
  int num_qubits = 0;
  std::span<const int> targets;   // targets[0] is the most significant bit of the block
  std::span<const int> controls;  // all must be |1>
};

namespace serial {

// Complex Pauli coefficients Tr(P H) / 2^q for every word index.
std::vector<std::complex<double>> pauli_coefficients(const Eigen::MatrixXd& h, int q);

// amps <- (controlled) block action of `gate` (2^t x 2^t, t = targets.size()).
// With no targets the gate is a 1x1 phase applied where all controls are set.
void apply_block(std::span<Amplitude> amps, const Eigen::MatrixXcd& gate, const BlockAction& act);

// Probability of each value of the leading `register_qubits` qubits.
std::vector<double> leading_marginal(std::span<const Amplitude> amps, int register_qubits);

double norm_squared(std::span<const Amplitude> amps);

}  // namespace serial

namespace parallel {

std::vector<std::complex<double>> pauli_coefficients(const Eigen::MatrixXd& h, int q);
void apply_block(std::span<Amplitude> amps, const Eigen::MatrixXcd& gate, const BlockAction& act);
std::vector<double> leading_marginal(std::span<const Amplitude> amps, int register_qubits);
double norm_squared(std::span<const Amplitude> amps);

}  // namespace parallel

// Number of worker threads the parallel kernels may use.
int max_threads();
void set_max_threads(int threads);

}  // namespace qtda::kernels
