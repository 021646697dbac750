#pragma once

// Laplacian -> QPE-ready Hamiltonian: Gershgorin bound, padding to a power of
// two, rescaling into [0, delta] and expansion in the Pauli basis.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qtda/complex.hpp"

namespace qtda {

inline constexpr double kDefaultDelta = 6.0;
inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kMaxDelta = kTwoPi - 1e-6;
inline constexpr double kPauliPruneThreshold = 1e-12;

struct PaddedHamiltonian {
  Eigen::MatrixXd matrix;         // 2^q x 2^q, real symmetric
  int q = 0;                      // system qubits
  double lambda_max_bound = 0.0;  // Gershgorin bound of the unpadded Laplacian
  double delta = 0.0;             // 0 until scale_hamiltonian has run
  Eigen::Index original_dim = 0;  // |S_k|

  Eigen::Index dim() const { return matrix.rows(); }
  bool scaled() const { return delta > 0.0; }
};

// max_i (a_ii + sum_{j != i} |a_ij|)
double gershgorin_bound(const Eigen::MatrixXd& m);

// Block-diagonal [L, (bound/2) I] of size 2^q with q = max(1, ceil(log2 |S_k|)).
// A zero Laplacian (bound 0) is padded with ones instead.
PaddedHamiltonian pad_laplacian(const Laplacian& lap);
PaddedHamiltonian pad_matrix(const Eigen::MatrixXd& m);

// Multiplies by delta / bound. Requires 0 < delta <= kMaxDelta.
PaddedHamiltonian scale_hamiltonian(PaddedHamiltonian padded, double delta = kDefaultDelta);

// Convenience: laplacian -> padded -> scaled.
PaddedHamiltonian prepare_hamiltonian(const Laplacian& lap, double delta = kDefaultDelta);

struct PauliTerm {
  double coefficient = 0.0;
  std::string word;  // leftmost letter acts on qubit 0 (most significant bit)

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

struct PauliDecomposition {
  int q = 0;
  std::vector<PauliTerm> terms;  // sorted by word

  // Coefficient of `word`, 0 if pruned.
  double coefficient(const std::string& word) const;
};

// Index in [0, 4^q) <-> word, base 4 with I=0, X=1, Y=2, Z=3 and the leftmost
// letter as the most significant digit.
std::string pauli_word(std::size_t index, int q);
std::size_t pauli_index(const std::string& word);

PauliDecomposition pauli_decompose(const Eigen::MatrixXd& h);
inline PauliDecomposition pauli_decompose(const PaddedHamiltonian& ham) {
  return pauli_decompose(ham.matrix);
}

// Dense 2^q x 2^q matrix of a single word.
Eigen::MatrixXcd pauli_matrix(const std::string& word);

Eigen::MatrixXcd reconstruct(const PauliDecomposition& decomp);

// Text export, one `coefficient WORD` line per term, sorted by word.
std::string format_coefficient(double c);
std::string format_decomposition(const PauliDecomposition& decomp);

}  // namespace qtda
