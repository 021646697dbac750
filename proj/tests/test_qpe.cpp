#include "qtda/qpe.hpp"

#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qtda/errors.hpp"

using namespace qtda;
using cd = std::complex<double>;

namespace {

PaddedHamiltonian worked_hamiltonian() {
  const auto c = complex_from_simplices(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}, {0, 1, 2}});
  return prepare_hamiltonian(laplacian(c, 1));
}

// Padded, scaled spectrum of the worked example.
const std::vector<double> kWorkedSpectrum{0, 1, 3, 3, 3, 3, 3, 5};

double oracle_zero_probability(const std::vector<double>& spectrum, int p) {
  double acc = 0;
  for (double l : spectrum) acc += oracle::zero_probability_sum(l / (2 * std::numbers::pi), p);
  return acc / static_cast<double>(spectrum.size());
}

// exp(i H) via Taylor series with scaling and squaring.
Eigen::MatrixXcd expm_i(const Eigen::MatrixXd& h) {
  const int squarings = 8;
  const Eigen::MatrixXcd a = cd(0, 1) * h.cast<cd>() / std::ldexp(1.0, squarings);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(h.rows(), h.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

double operator_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a - b);
  return svd.singularValues()(0);
}

}  // namespace

TEST(ZeroKernel, MatchesDirectSum) {
  for (int p = 1; p <= 8; ++p) {
    for (double theta : {0.0, 1e-9, 0.01, 0.1, 0.25, 0.3337, 0.5, 0.77, 0.999}) {
      EXPECT_NEAR(zero_outcome_kernel(theta, p), oracle::zero_probability_sum(theta, p), 1e-12)
          << "p " << p << " theta " << theta;
    }
  }
  EXPECT_DOUBLE_EQ(zero_outcome_kernel(1.0, 3), 1.0);
  EXPECT_NEAR(zero_outcome_kernel(3.0 / 8.0, 3), 0.0, 1e-15);
}

TEST(Analytic, WorkedExampleZeroProbability) {
  const auto h = worked_hamiltonian();
  for (int p = 1; p <= 8; ++p) {
    EXPECT_NEAR(analytic_zero_probability(h, p), oracle_zero_probability(kWorkedSpectrum, p), 1e-12) << p;
  }
  EXPECT_NEAR(analytic_zero_probability(h, 3), 0.13724, 5e-6);
  const auto e = analytic_betti(h, 3);
  EXPECT_TRUE(e.analytic);
  EXPECT_EQ(e.beta_rounded, 1);
  EXPECT_NEAR(e.beta_raw, 8 * e.p_zero, 1e-15);
}

TEST(Unitary, ExpOfHamiltonianMatchesSeries) {
  const auto h = worked_hamiltonian();
  EXPECT_LT((unitary_from_hamiltonian(h) - expm_i(h.matrix)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(PauliExponential, MatchesClosedForm) {
  // exp(i t P) = cos t I + i sin t P since P^2 = I.
  for (const std::string w : {"Z", "X", "Y", "XY", "ZIX", "YYZ", "IXI", "XYZI"}) {
    const double t = 0.37;
    const Eigen::MatrixXcd p = oracle::word_matrix(w);
    const Eigen::MatrixXcd want =
        std::cos(t) * Eigen::MatrixXcd::Identity(p.rows(), p.cols()) + cd(0, std::sin(t)) * p;
    EXPECT_LT((pauli_exponential(w, t).unitary() - want).cwiseAbs().maxCoeff(), 1e-12) << w;
  }
  const auto id = pauli_exponential("II", 0.5);
  ASSERT_EQ(id.size(), 1u);
  EXPECT_TRUE(id.unitary().isApprox(std::polar(1.0, 0.5) * Eigen::Matrix4cd::Identity()));
}

TEST(Trotter, SingleStepIsExactForCommutingTerms) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(4, 4);
  h.diagonal() << 0.5, 1.0, 2.0, 3.5;
  const auto c = trotter_circuit(pauli_decompose(h), 1);
  EXPECT_LT((c.unitary() - unitary_from_hamiltonian(h)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Trotter, ErrorHalvesWhenStepsDouble) {
  const auto h = worked_hamiltonian();
  const auto exact = unitary_from_hamiltonian(h);
  const auto decomp = pauli_decompose(h);
  double previous = operator_distance(trotter_circuit(decomp, 2).unitary(), exact);
  for (int steps = 4; steps <= 32; steps *= 2) {
    const double err = operator_distance(trotter_circuit(decomp, steps).unitary(), exact);
    const double ratio = previous / err;
    EXPECT_GE(ratio, 2.0 / 1.5) << steps;
    EXPECT_LE(ratio, 2.0 * 1.5) << steps;
    previous = err;
  }
}

TEST(Qpe, ExactModeMatchesAnalyticWithinFiveSigma) {
  const auto h = worked_hamiltonian();
  QpeConfig cfg;
  cfg.precision_qubits = 3;
  cfg.shots = 200000;
  cfg.seed = 99;
  const auto e = qpe_betti(h, cfg);
  const double p0 = analytic_zero_probability(h, 3);
  const double sigma = std::sqrt(p0 * (1 - p0) / cfg.shots);
  EXPECT_LE(std::abs(e.p_zero - p0), 5 * sigma);
  EXPECT_EQ(e.q, 3);
  EXPECT_EQ(e.shots, cfg.shots);
  EXPECT_NEAR(e.beta_raw, 8.0 * e.zero_count / cfg.shots, 1e-12);
}

TEST(Qpe, EigenstateReadsExactPhase) {
  // Diagonal H with eigenphases on the register grid: each basis input lands on one bin.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = 0.0;
  m(1, 1) = 2 * std::numbers::pi * 3.0 / 8.0;
  auto h = pad_matrix(m);
  h.delta = 1.0;  // already in range
  QpeConfig cfg;
  cfg.precision_qubits = 3;
  cfg.shots = 4000;
  const auto e = qpe_betti(h, cfg);
  EXPECT_NEAR(e.p_zero, 0.5, 5 * std::sqrt(0.25 / 4000));
  EXPECT_EQ(analytic_zero_probability(h, 3), 0.5);
}

TEST(Qpe, TrotterModeConvergesToExact) {
  const auto h = worked_hamiltonian();
  QpeConfig cfg;
  cfg.precision_qubits = 3;
  cfg.shots = 100000;
  cfg.seed = 5;
  cfg.evolution = EvolutionMode::Trotter;
  cfg.trotter_steps = 8;
  const auto e = qpe_betti(h, cfg);
  const double p0 = analytic_zero_probability(h, 3);
  // Trotter bias at 8 steps is small but not zero; allow 5 sigma plus 0.01.
  EXPECT_LE(std::abs(e.p_zero - p0), 5 * std::sqrt(p0 * (1 - p0) / cfg.shots) + 0.01);
}

TEST(Qpe, SampledBasisAgreesWithAuxiliaryCircuit) {
  const auto h = worked_hamiltonian();
  QpeConfig a;
  a.precision_qubits = 2;
  a.shots = 50000;
  a.seed = 1;
  QpeConfig b = a;
  b.mixed_state = MixedStateMode::SampledBasis;
  b.seed = 2;
  const auto ea = qpe_betti(h, a);
  const auto eb = qpe_betti(h, b);
  // Two-proportion z test on the zero outcome.
  const double pooled = static_cast<double>(ea.zero_count + eb.zero_count) / (a.shots + b.shots);
  const double se = std::sqrt(pooled * (1 - pooled) * (1.0 / a.shots + 1.0 / b.shots));
  EXPECT_LT(std::abs(ea.p_zero - eb.p_zero) / se, 5.0);
}

TEST(Qpe, DeterministicGivenSeed) {
  const auto h = worked_hamiltonian();
  QpeConfig cfg;
  cfg.seed = 1234;
  const auto a = qpe_betti(h, cfg);
  const auto b = qpe_betti(h, cfg);
  EXPECT_EQ(a.zero_count, b.zero_count);
  EXPECT_EQ(a.to_json(), b.to_json());
}

TEST(Qpe, ValidatesInputs) {
  auto h = worked_hamiltonian();
  QpeConfig cfg;
  cfg.shots = 0;
  EXPECT_THROW(qpe_betti(h, cfg), ArgumentError);
  cfg = {};
  cfg.precision_qubits = 0;
  EXPECT_THROW(qpe_betti(h, cfg), ArgumentError);
  cfg = {};
  auto unscaled = pad_laplacian(laplacian(
      complex_from_simplices(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}, {0, 1, 2}}), 1));
  EXPECT_THROW(qpe_betti(unscaled, cfg), ArgumentError);
}

TEST(Qpe, ResourceBudget) {
  auto h = pad_matrix(Eigen::MatrixXd::Identity(512, 512));
  h = scale_hamiltonian(h);
  QpeConfig cfg;
  cfg.precision_qubits = 7;
  EXPECT_EQ(required_qubits(h.q, cfg), 25);
  EXPECT_THROW(qpe_betti(h, cfg), ResourceError);
  cfg.mixed_state = MixedStateMode::SampledBasis;
  EXPECT_EQ(required_qubits(h.q, cfg), 16);
}

TEST(Gap, WorkedExample) {
  const auto h = worked_hamiltonian();
  EXPECT_NEAR(spectral_gap(h), 1.0, 1e-9);
  EXPECT_TRUE(gap_resolved(h, 3));
  EXPECT_FALSE(gap_resolved(h, 2));
}

TEST(Gap, WrapsAroundTwoPi) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(1, 1) = 2 * std::numbers::pi - 0.05;
  auto h = pad_matrix(m);
  h.delta = 1.0;
  EXPECT_NEAR(spectral_gap(h), 0.05, 1e-9);
}

TEST(Rounding, HalfToEven) {
  EXPECT_EQ(round_half_even(0.5), 0);
  EXPECT_EQ(round_half_even(1.5), 2);
  EXPECT_EQ(round_half_even(2.5), 2);
  EXPECT_EQ(round_half_even(2.51), 3);
  EXPECT_EQ(round_half_even(-0.4), 0);
}

TEST(Seeds, DerivedSeedsDiffer) {
  EXPECT_EQ(derive_seed({1, 2, 3}), derive_seed({1, 2, 3}));
  EXPECT_NE(derive_seed({1, 2, 3}), derive_seed({1, 2, 4}));
  EXPECT_NE(derive_seed({1, 2}), derive_seed({2, 1}));
}

TEST(Modes, ParseAndPrint) {
  EXPECT_EQ(parse_evolution_mode(to_string(EvolutionMode::Trotter)), EvolutionMode::Trotter);
  EXPECT_EQ(parse_mixed_state_mode(to_string(MixedStateMode::SampledBasis)), MixedStateMode::SampledBasis);
  EXPECT_THROW(parse_evolution_mode("fast"), ArgumentError);
}

TEST(Estimate, JsonKeys) {
  const auto e = analytic_betti(worked_hamiltonian(), 3);
  const std::string j = e.to_json();
  for (const char* key : {"\"q\"", "\"p\"", "\"shots\"", "\"p_zero\"", "\"beta_raw\"", "\"beta\""}) {
    EXPECT_NE(j.find(key), std::string::npos) << key;
  }
}
