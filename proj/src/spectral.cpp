#include "qtda/spectral.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "qtda/errors.hpp"
#include "qtda/kernels.hpp"

namespace qtda {

namespace {

constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

int qubits_for(Eigen::Index dim) {
  int q = 1;
  while ((Eigen::Index{1} << q) < dim) ++q;
  return q;
}

double max_asymmetry(const Eigen::MatrixXd& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace

double gershgorin_bound(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw ArgumentError("Gershgorin bound needs a square matrix");
  if (m.rows() == 0) throw ArgumentError("Gershgorin bound of an empty matrix");
  double bound = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    double row = m(i, i);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j != i) row += std::abs(m(i, j));
    }
    bound = std::max(bound, row);
  }
  return bound;
}

PaddedHamiltonian pad_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw ArgumentError("padding needs a nonempty square matrix");
  PaddedHamiltonian out;
  out.original_dim = m.rows();
  out.q = qubits_for(m.rows());
  out.lambda_max_bound = gershgorin_bound(m);
  const Eigen::Index dim = Eigen::Index{1} << out.q;
  // A zero Laplacian has bound 0; pad with 1 so the filler stays out of the kernel.
  const double fill = out.lambda_max_bound > 0.0 ? out.lambda_max_bound / 2.0 : 1.0;
  out.matrix = Eigen::MatrixXd::Zero(dim, dim);
  out.matrix.topLeftCorner(m.rows(), m.cols()) = m;
  for (Eigen::Index i = m.rows(); i < dim; ++i) out.matrix(i, i) = fill;
  return out;
}

PaddedHamiltonian pad_laplacian(const Laplacian& lap) { return pad_matrix(lap.real()); }

PaddedHamiltonian scale_hamiltonian(PaddedHamiltonian padded, double delta) {
  if (!(delta > 0.0)) throw ArgumentError("delta must be positive");
  if (delta > kMaxDelta) throw ArgumentError("delta must stay below 2*pi to avoid phase aliasing");
  padded.delta = delta;
  if (padded.lambda_max_bound > 0.0) padded.matrix *= delta / padded.lambda_max_bound;
  return padded;
}

PaddedHamiltonian prepare_hamiltonian(const Laplacian& lap, double delta) {
  return scale_hamiltonian(pad_laplacian(lap), delta);
}

double PauliDecomposition::coefficient(const std::string& word) const {
  auto it = std::lower_bound(terms.begin(), terms.end(), word,
                             [](const PauliTerm& t, const std::string& w) { return t.word < w; });
  return (it != terms.end() && it->word == word) ? it->coefficient : 0.0;
}

std::string pauli_word(std::size_t index, int q) {
  std::string w(static_cast<std::size_t>(q), 'I');
  for (int l = q - 1; l >= 0; --l) {
    w[l] = kLetters[index & 3u];
    index >>= 2;
  }
  return w;
}

std::size_t pauli_index(const std::string& word) {
  std::size_t index = 0;
  for (char c : word) {
    const char* p = std::find(std::begin(kLetters), std::end(kLetters), c);
    if (p == std::end(kLetters)) throw ArgumentError(std::string("invalid Pauli letter '") + c + "'");
    index = (index << 2) | static_cast<std::size_t>(p - kLetters);
  }
  return index;
}

PauliDecomposition pauli_decompose(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols() || h.rows() < 2) throw ArgumentError("Pauli decomposition needs a square matrix");
  const int q = qubits_for(h.rows());
  if ((Eigen::Index{1} << q) != h.rows()) throw ArgumentError("matrix dimension must be a power of two");
  if (max_asymmetry(h) > 1e-9) throw ArgumentError("Pauli decomposition needs a Hermitian (symmetric) matrix");

  const auto coeffs = kernels::parallel::pauli_coefficients(h, q);
  PauliDecomposition out{q, {}};
  // Word index order coincides with lexicographic order over "IXYZ".
  for (std::size_t w = 0; w < coeffs.size(); ++w) {
    if (std::abs(coeffs[w].imag()) > 1e-9) throw NumericError("non-real Pauli coefficient");
    const double c = coeffs[w].real();
    if (std::abs(c) > kPauliPruneThreshold) out.terms.push_back({c, pauli_word(w, q)});
  }
  return out;
}

Eigen::MatrixXcd pauli_matrix(const std::string& word) {
  using C = std::complex<double>;
  Eigen::Matrix2cd single[4];
  single[0] << 1, 0, 0, 1;
  single[1] << 0, 1, 1, 0;
  single[2] << 0, C(0, -1), C(0, 1), 0;
  single[3] << 1, 0, 0, -1;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : word) {
    const auto& s = single[pauli_index(std::string(1, c))];
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * s;
    out = std::move(next);
  }
  return out;
}

Eigen::MatrixXcd reconstruct(const PauliDecomposition& decomp) {
  const Eigen::Index dim = Eigen::Index{1} << decomp.q;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : decomp.terms) out += t.coefficient * pauli_matrix(t.word);
  return out;
}

std::string format_coefficient(double c) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, c);
  std::string s(buf, end);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string format_decomposition(const PauliDecomposition& decomp) {
  std::ostringstream os;
  for (const auto& t : decomp.terms) os << format_coefficient(t.coefficient) << ' ' << t.word << '\n';
  return os.str();
}

}  // namespace qtda
