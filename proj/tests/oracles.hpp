#pragma once

// Slow, direct reference implementations used only as test oracles. Nothing in
// here calls into the library's numerical code.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;

inline Eigen::Matrix2cd pauli(char c) {
  Eigen::Matrix2cd m;
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cd(0, -1), cd(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Leftmost letter is the most significant tensor factor.
inline Eigen::MatrixXcd word_matrix(const std::string& word) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : word) m = kron(m, pauli(c));
  return m;
}

inline std::vector<std::string> all_words(int q) {
  std::vector<std::string> out{""};
  for (int i = 0; i < q; ++i) {
    std::vector<std::string> next;
    for (const auto& w : out)
      for (char c : {'I', 'X', 'Y', 'Z'}) next.push_back(w + c);
    out = std::move(next);
  }
  return out;
}

inline cd trace_coefficient(const std::string& word, const Eigen::MatrixXd& h) {
  return (word_matrix(word) * h.cast<cd>()).trace() / static_cast<double>(h.rows());
}

// Full 2^n x 2^n operator of a (controlled) gate; qubit 0 is the MSB.
inline Eigen::MatrixXcd full_operator(const Eigen::MatrixXcd& g, const std::vector<int>& targets,
                                      const std::vector<int>& controls, int n) {
  const std::size_t dim = std::size_t{1} << n;
  auto bit = [n](std::size_t idx, int q) { return (idx >> (n - 1 - q)) & 1U; };
  auto local = [&](std::size_t idx) {
    std::size_t l = 0;
    for (int t : targets) l = (l << 1) | bit(idx, t);
    return l;
  };
  auto rest = [&](std::size_t idx) {
    std::size_t r = idx;
    for (int t : targets) r &= ~(std::size_t{1} << (n - 1 - t));
    return r;
  };
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    bool on = true;
    for (int c : controls) on = on && bit(j, c);
    for (std::size_t i = 0; i < dim; ++i) {
      if (rest(i) != rest(j)) continue;
      if (on) {
        u(i, j) = g(local(i), local(j));
      } else if (i == j) {
        u(i, j) = 1.0;
      }
    }
  }
  return u;
}

// Inverse DFT with the first register qubit as the MSB: <k|F^-1|j> = e^{-2 pi i jk/N} / sqrt(N).
inline Eigen::MatrixXcd inverse_dft(int qubits) {
  const int n = 1 << qubits;
  Eigen::MatrixXcd f(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) f(k, j) = std::polar(1.0 / std::sqrt(n), -2.0 * std::numbers::pi * j * k / n);
  return f;
}

// All cliques of an undirected graph by subset enumeration, grouped by size.
inline std::vector<std::vector<std::vector<int>>> cliques(int n, const std::vector<std::vector<bool>>& adj) {
  std::vector<std::vector<std::vector<int>>> out(n);
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    std::vector<int> verts;
    for (int v = 0; v < n; ++v)
      if (mask & (1U << v)) verts.push_back(v);
    bool ok = true;
    for (std::size_t a = 0; a < verts.size() && ok; ++a)
      for (std::size_t b = a + 1; b < verts.size() && ok; ++b) ok = adj[verts[a]][verts[b]];
    if (ok) out[verts.size() - 1].push_back(verts);
  }
  for (auto& level : out) std::sort(level.begin(), level.end());
  return out;
}

inline Eigen::Index float_rank(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-9);
  return lu.rank();
}

// |2^-p sum_j e^{2 pi i theta j}|^2, the zero-outcome probability as a direct sum.
inline double zero_probability_sum(double theta, int p) {
  const int n = 1 << p;
  cd acc = 0;
  for (int j = 0; j < n; ++j) acc += std::polar(1.0, 2.0 * std::numbers::pi * theta * j);
  return std::norm(acc / static_cast<double>(n));
}

inline Eigen::MatrixXd random_symmetric(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = u(rng);
  return (m + m.transpose()) / 2.0;
}

inline Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cd(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
}

inline std::vector<cd> random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cd> v(std::size_t{1} << n);
  double norm = 0;
  for (auto& a : v) {
    a = cd(g(rng), g(rng));
    norm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return v;
}

}  // namespace oracle
