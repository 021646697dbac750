#include "qtda/qpe.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <json.hpp>

#include "qtda/errors.hpp"

namespace qtda {

void QpeConfig::validate() const {
  if (precision_qubits < 1 || precision_qubits > kMaxPrecisionQubits) {
    throw ArgumentError("precision qubits must be in [1, " + std::to_string(kMaxPrecisionQubits) + "]");
  }
  if (shots < 1) throw ArgumentError("shots must be >= 1");
  if (trotter_steps < 1) throw ArgumentError("trotter steps must be >= 1");
}

std::string BettiEstimate::to_json() const {
  nlohmann::ordered_json j;
  j["q"] = q;
  j["p"] = p;
  j["shots"] = shots;
  j["p_zero"] = p_zero;
  j["beta_raw"] = beta_raw;
  j["beta"] = beta_rounded;
  return j.dump();
}

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
  std::vector<std::uint32_t> words;
  for (auto p : parts) {
    words.push_back(static_cast<std::uint32_t>(p));
    words.push_back(static_cast<std::uint32_t>(p >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[1]} << 32) | out[0];
}

long round_half_even(double x) { return std::lrint(x); }

Circuit mixed_state_circuit(int q) {
  if (q < 1) throw ArgumentError("mixed state needs q >= 1");
  Circuit c(2 * q);
  for (int i = 0; i < q; ++i) c.add(Gate::hadamard(i));
  for (int i = 0; i < q; ++i) c.add(Gate::cnot(i, q + i));
  return c;
}

StateVector prepare_mixed_state(int q) {
  StateVector s(2 * q);
  mixed_state_circuit(q).apply(s);
  return s;
}

Eigen::MatrixXcd unitary_from_hamiltonian(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols()) throw ArgumentError("Hamiltonian must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw NumericError("eigensolver did not converge");
  const Eigen::MatrixXd& v = solver.eigenvectors();
  const Eigen::VectorXcd phases =
      solver.eigenvalues().unaryExpr([](double l) { return std::polar(1.0, l); });
  Eigen::MatrixXcd u = v.cast<std::complex<double>>() * phases.asDiagonal() * v.transpose();
  const double err =
      (u.adjoint() * u - Eigen::MatrixXcd::Identity(h.rows(), h.cols())).cwiseAbs().maxCoeff();
  if (err > 1e-9) throw NumericError("exp(iH) lost unitarity");
  return u;
}

Circuit pauli_exponential(const std::string& word, double theta) {
  const int q = static_cast<int>(word.size());
  Circuit c(q);
  std::vector<int> support;
  for (int i = 0; i < q; ++i) {
    if (word[i] != 'I') support.push_back(i);
  }
  if (support.empty()) {
    c.add(Gate::global_phase(theta));
    return c;
  }
  auto basis_change = [&](bool undo) {
    for (int i : support) {
      if (word[i] == 'X') c.add(Gate::hadamard(i));
      if (word[i] == 'Y') c.add(Gate::rx(i, undo ? -std::numbers::pi / 2 : std::numbers::pi / 2));
    }
  };
  basis_change(false);
  for (std::size_t k = 0; k + 1 < support.size(); ++k) c.add(Gate::cnot(support[k], support[k + 1]));
  // exp(i theta Z) = RZ(-2 theta)
  c.add(Gate::rz(support.back(), -2.0 * theta));
  for (std::size_t k = support.size() - 1; k > 0; --k) c.add(Gate::cnot(support[k - 1], support[k]));
  basis_change(true);
  return c;
}

Circuit trotter_circuit(const PauliDecomposition& decomp, int steps) {
  if (steps < 1) throw ArgumentError("trotter steps must be >= 1");
  Circuit step(decomp.q);
  for (const auto& t : decomp.terms) step.append(pauli_exponential(t.word, t.coefficient / steps));
  Circuit out(decomp.q);
  for (int s = 0; s < steps; ++s) out.append(step);
  return out;
}

int required_qubits(int q, const QpeConfig& cfg) {
  return cfg.precision_qubits + q + (cfg.mixed_state == MixedStateMode::AuxiliaryCircuit ? q : 0);
}

namespace {

// H on the precision register, controlled evolutions, inverse QFT. The system
// register occupies [p, p + q) of a `width`-qubit state.
Circuit phase_estimation_core(const PaddedHamiltonian& ham, const QpeConfig& cfg, int width) {
  const int p = cfg.precision_qubits;
  const int q = ham.q;
  std::vector<int> precision(p), system(q);
  for (int i = 0; i < p; ++i) precision[i] = i;
  for (int i = 0; i < q; ++i) system[i] = p + i;

  Circuit c(width);
  for (int i : precision) c.add(Gate::hadamard(i));

  if (cfg.evolution == EvolutionMode::Exact) {
    // powers[j] = U^(2^j) by repeated squaring.
    std::vector<Eigen::MatrixXcd> powers{unitary_from_hamiltonian(ham)};
    for (int j = 1; j < p; ++j) powers.push_back(powers.back() * powers.back());
    for (int i = 0; i < p; ++i) {
      Gate g = Gate::dense(powers[p - 1 - i], system, "U^" + std::to_string(1L << (p - 1 - i)));
      g.controls = {i};
      c.add(std::move(g));
    }
  } else {
    const Circuit step = trotter_circuit(pauli_decompose(ham), cfg.trotter_steps);
    for (int i = 0; i < p; ++i) {
      const Circuit controlled = step.embedded(system, width, {i});
      for (long r = 0; r < (1L << (p - 1 - i)); ++r) c.append(controlled);
    }
  }
  c.append(inverse_qft(width, precision));
  c.add(Gate::measure(precision));
  return c;
}

long sample_zero_count(const std::vector<double>& probs, long shots, std::mt19937_64& rng) {
  std::discrete_distribution<std::size_t> dist(probs.begin(), probs.end());
  long zeros = 0;
  for (long s = 0; s < shots; ++s) {
    if (dist(rng) == 0) ++zeros;
  }
  return zeros;
}

BettiEstimate finish(const PaddedHamiltonian& ham, int p, long shots, long zeros) {
  BettiEstimate e;
  e.q = ham.q;
  e.p = p;
  e.shots = shots;
  e.zero_count = zeros;
  e.p_zero = static_cast<double>(zeros) / static_cast<double>(shots);
  e.beta_raw = std::ldexp(e.p_zero, ham.q);
  e.beta_rounded = round_half_even(e.beta_raw);
  return e;
}

}  // namespace

BettiEstimate qpe_betti(const PaddedHamiltonian& ham, const QpeConfig& cfg) {
  cfg.validate();
  if (!ham.scaled()) throw ArgumentError("Hamiltonian must be rescaled before phase estimation");
  if (ham.dim() != (Eigen::Index{1} << ham.q)) throw ArgumentError("Hamiltonian is not 2^q x 2^q");
  const int width = required_qubits(ham.q, cfg);
  if (width > kMaxTotalQubits) {
    throw ResourceError("simulation needs " + std::to_string(width) + " qubits (budget " +
                        std::to_string(kMaxTotalQubits) + ")");
  }
  const int p = cfg.precision_qubits;
  const Circuit core = phase_estimation_core(ham, cfg, width);
  std::mt19937_64 rng(cfg.seed);

  if (cfg.mixed_state == MixedStateMode::AuxiliaryCircuit) {
    StateVector state(width);
    std::vector<int> purified(2 * ham.q);
    for (int i = 0; i < 2 * ham.q; ++i) purified[i] = p + i;
    mixed_state_circuit(ham.q).embedded(purified, width).apply(state);
    core.apply(state);
    const long zeros = sample_zero_count(state.leading_probabilities(p), cfg.shots, rng);
    return finish(ham, p, cfg.shots, zeros);
  }

  // One uniformly drawn system basis state per shot; each distinct draw is
  // simulated once.
  const std::size_t system_dim = std::size_t{1} << ham.q;
  std::uniform_int_distribution<std::size_t> pick(0, system_dim - 1);
  std::vector<long> draws(system_dim, 0);
  for (long s = 0; s < cfg.shots; ++s) ++draws[pick(rng)];
  long zeros = 0;
  for (std::size_t b = 0; b < system_dim; ++b) {
    if (draws[b] == 0) continue;
    auto state = StateVector::basis(width, b);
    core.apply(state);
    zeros += sample_zero_count(state.leading_probabilities(p), draws[b], rng);
  }
  return finish(ham, p, cfg.shots, zeros);
}

double zero_outcome_kernel(double theta, int p) {
  const double s = std::sin(std::numbers::pi * theta);
  if (std::abs(s) < 1e-12) return 1.0;
  const double n = std::ldexp(1.0, p);
  const double num = std::sin(n * std::numbers::pi * theta);
  return (num * num) / (n * n * s * s);
}

namespace {

Eigen::VectorXd eigenvalues_of(const PaddedHamiltonian& ham) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(ham.matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("eigensolver did not converge");
  return solver.eigenvalues();
}

}  // namespace

double analytic_zero_probability(const PaddedHamiltonian& ham, int p) {
  if (p < 1) throw ArgumentError("precision qubits must be >= 1");
  const auto ev = eigenvalues_of(ham);
  double acc = 0.0;
  for (double l : ev) acc += zero_outcome_kernel(l / kTwoPi, p);
  return acc / static_cast<double>(ev.size());
}

BettiEstimate analytic_betti(const PaddedHamiltonian& ham, int p) {
  BettiEstimate e;
  e.q = ham.q;
  e.p = p;
  e.analytic = true;
  e.p_zero = analytic_zero_probability(ham, p);
  e.beta_raw = std::ldexp(e.p_zero, ham.q);
  e.beta_rounded = round_half_even(e.beta_raw);
  return e;
}

double spectral_gap(const PaddedHamiltonian& ham, double zero_tol) {
  double gap = std::numeric_limits<double>::infinity();
  for (double l : eigenvalues_of(ham)) {
    const double wrapped = std::fmod(std::abs(l), kTwoPi);
    const double dist = std::min(wrapped, kTwoPi - wrapped);
    if (dist > zero_tol) gap = std::min(gap, dist);
  }
  return gap;
}

bool gap_resolved(const PaddedHamiltonian& ham, int p) {
  return spectral_gap(ham) > kTwoPi / std::ldexp(1.0, p);
}

std::string to_string(EvolutionMode mode) { return mode == EvolutionMode::Exact ? "exact" : "trotter"; }

std::string to_string(MixedStateMode mode) {
  return mode == MixedStateMode::AuxiliaryCircuit ? "auxiliary-circuit" : "sampled-basis";
}

EvolutionMode parse_evolution_mode(const std::string& s) {
  if (s == "exact") return EvolutionMode::Exact;
  if (s == "trotter") return EvolutionMode::Trotter;
  throw ArgumentError("unknown evolution mode '" + s + "'");
}

MixedStateMode parse_mixed_state_mode(const std::string& s) {
  if (s == "auxiliary-circuit") return MixedStateMode::AuxiliaryCircuit;
  if (s == "sampled-basis") return MixedStateMode::SampledBasis;
  throw ArgumentError("unknown mixed-state mode '" + s + "'");
}

}  // namespace qtda
