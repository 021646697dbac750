#include "qtda/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qtda/errors.hpp"

namespace qtda::kernels {

namespace {

// Below this many amplitudes the fork/join cost dominates.
constexpr std::ptrdiff_t kParallelThreshold = 1 << 12;
constexpr std::size_t kNormChunk = 1 << 10;

struct Masks {
  std::uint64_t target = 0;
  std::uint64_t control = 0;
  std::vector<std::uint64_t> offsets;  // basis offset of each block row
};

std::uint64_t bit_of(int qubit, int num_qubits) {
  return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

Masks make_masks(const BlockAction& act, Eigen::Index gate_dim) {
  Masks m;
  const int t = static_cast<int>(act.targets.size());
  if (gate_dim != (Eigen::Index{1} << t)) throw ArgumentError("gate size does not match targets");
  for (int q : act.targets) {
    if (q < 0 || q >= act.num_qubits) throw ArgumentError("target qubit out of range");
    const auto b = bit_of(q, act.num_qubits);
    if (m.target & b) throw ArgumentError("repeated target qubit");
    m.target |= b;
  }
  for (int q : act.controls) {
    if (q < 0 || q >= act.num_qubits) throw ArgumentError("control qubit out of range");
    const auto b = bit_of(q, act.num_qubits);
    if ((m.target | m.control) & b) throw ArgumentError("control collides with another qubit");
    m.control |= b;
  }
  m.offsets.assign(std::size_t{1} << t, 0);
  for (std::size_t row = 0; row < m.offsets.size(); ++row) {
    for (int j = 0; j < t; ++j) {
      if (row & (std::size_t{1} << (t - 1 - j))) m.offsets[row] |= bit_of(act.targets[j], act.num_qubits);
    }
  }
  return m;
}

inline bool is_base(std::uint64_t i, const Masks& m) {
  return (i & m.target) == 0 && (i & m.control) == m.control;
}

inline void act_on(std::span<Amplitude> amps, const Eigen::MatrixXcd& gate, const Masks& m,
                   std::uint64_t base, std::vector<Amplitude>& in, std::vector<Amplitude>& out) {
  const auto dim = static_cast<Eigen::Index>(m.offsets.size());
  for (Eigen::Index r = 0; r < dim; ++r) in[r] = amps[base | m.offsets[r]];
  for (Eigen::Index r = 0; r < dim; ++r) {
    Amplitude acc = 0.0;
    for (Eigen::Index c = 0; c < dim; ++c) acc += gate(r, c) * in[c];
    out[r] = acc;
  }
  for (Eigen::Index r = 0; r < dim; ++r) amps[base | m.offsets[r]] = out[r];
}

// Tr(P H) / 2^q for one word. P has a single nonzero per row r, at column
// r ^ x with value i^{|x & z|} (-1)^{|z & col|}.
std::complex<double> pauli_coefficient(const Eigen::MatrixXd& h, int q, std::size_t word) {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (int l = 0; l < q; ++l) {
    const auto letter = (word >> (2 * (q - 1 - l))) & 3u;
    const auto b = std::uint64_t{1} << (q - 1 - l);
    if (letter == 1 || letter == 2) x |= b;
    if (letter == 2 || letter == 3) z |= b;
  }
  const std::uint64_t dim = std::uint64_t{1} << q;
  double sum = 0.0;
  for (std::uint64_t r = 0; r < dim; ++r) {
    const std::uint64_t c = r ^ x;
    const double sign = (std::popcount(z & c) & 1) ? -1.0 : 1.0;
    sum += sign * h(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(r));
  }
  static constexpr std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kIPow[std::popcount(x & z) & 3] * (sum / static_cast<double>(dim));
}

void check_square_power(const Eigen::MatrixXd& h, int q) {
  if (h.rows() != h.cols() || h.rows() != (Eigen::Index{1} << q)) {
    throw ArgumentError("Pauli decomposition needs a 2^q x 2^q matrix");
  }
}

}  // namespace

namespace serial {

std::vector<std::complex<double>> pauli_coefficients(const Eigen::MatrixXd& h, int q) {
  check_square_power(h, q);
  std::vector<std::complex<double>> out(std::size_t{1} << (2 * q));
  for (std::size_t w = 0; w < out.size(); ++w) out[w] = pauli_coefficient(h, q, w);
  return out;
}

void apply_block(std::span<Amplitude> amps, const Eigen::MatrixXcd& gate, const BlockAction& act) {
  const Masks m = make_masks(act, gate.rows());
  std::vector<Amplitude> in(m.offsets.size()), out(m.offsets.size());
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (is_base(i, m)) act_on(amps, gate, m, i, in, out);
  }
}

std::vector<double> leading_marginal(std::span<const Amplitude> amps, int register_qubits) {
  const std::size_t values = std::size_t{1} << register_qubits;
  const std::size_t block = amps.size() / values;
  std::vector<double> probs(values, 0.0);
  for (std::size_t v = 0; v < values; ++v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < block; ++i) acc += std::norm(amps[v * block + i]);
    probs[v] = acc;
  }
  return probs;
}

double norm_squared(std::span<const Amplitude> amps) {
  double acc = 0.0;
  for (const auto& a : amps) acc += std::norm(a);
  return acc;
}

}  // namespace serial

namespace parallel {

std::vector<std::complex<double>> pauli_coefficients(const Eigen::MatrixXd& h, int q) {
  check_square_power(h, q);
  const auto words = static_cast<std::ptrdiff_t>(std::size_t{1} << (2 * q));
  std::vector<std::complex<double>> out(static_cast<std::size_t>(words));
#pragma omp parallel for schedule(static) if (words * (std::ptrdiff_t{1} << q) >= kParallelThreshold)
  for (std::ptrdiff_t w = 0; w < words; ++w) {
    out[w] = pauli_coefficient(h, q, static_cast<std::size_t>(w));
  }
  return out;
}

void apply_block(std::span<Amplitude> amps, const Eigen::MatrixXcd& gate, const BlockAction& act) {
  const Masks m = make_masks(act, gate.rows());
  const auto size = static_cast<std::ptrdiff_t>(amps.size());
#pragma omp parallel if (size >= kParallelThreshold)
  {
    std::vector<Amplitude> in(m.offsets.size()), out(m.offsets.size());
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < size; ++i) {
      const auto base = static_cast<std::uint64_t>(i);
      if (is_base(base, m)) act_on(amps, gate, m, base, in, out);
    }
  }
}

std::vector<double> leading_marginal(std::span<const Amplitude> amps, int register_qubits) {
  const auto values = static_cast<std::ptrdiff_t>(std::size_t{1} << register_qubits);
  const std::size_t block = amps.size() / static_cast<std::size_t>(values);
  std::vector<double> probs(static_cast<std::size_t>(values), 0.0);
#pragma omp parallel for schedule(static) if (static_cast<std::ptrdiff_t>(amps.size()) >= kParallelThreshold)
  for (std::ptrdiff_t v = 0; v < values; ++v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < block; ++i) acc += std::norm(amps[v * block + i]);
    probs[v] = acc;
  }
  return probs;
}

double norm_squared(std::span<const Amplitude> amps) {
  // Fixed-size chunks summed in order keep the result independent of thread count.
  const auto chunks = static_cast<std::ptrdiff_t>((amps.size() + kNormChunk - 1) / kNormChunk);
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(static) if (static_cast<std::ptrdiff_t>(amps.size()) >= kParallelThreshold)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * kNormChunk;
    const std::size_t end = std::min(amps.size(), begin + kNormChunk);
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) acc += std::norm(amps[i]);
    partial[c] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace parallel

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_max_threads(int threads) {
#ifdef _OPENMP
  if (threads >= 1) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

}  // namespace qtda::kernels
