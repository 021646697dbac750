// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.
#include <complex>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "qtda/kernels.hpp"

using namespace qtda::kernels;

namespace {

std::vector<Amplitude> random_amplitudes(int qubits) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<Amplitude> amps(std::size_t{1} << qubits);
  for (auto& a : amps) a = {g(rng), g(rng)};
  return amps;
}

Eigen::MatrixXcd two_qubit_gate() {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(4, 4);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = {g(rng), g(rng)};
  return Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
}

Eigen::MatrixXd symmetric(int dim) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(dim, dim);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
  return (m + m.transpose()) / 2;
}

template <auto Apply>
void BM_ApplyBlock(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto amps = random_amplitudes(n);
  const auto gate = two_qubit_gate();
  const std::vector<int> targets{0, n - 1};
  const std::vector<int> controls{n / 2};
  const BlockAction act{n, targets, controls};
  for (auto _ : state) {
    Apply(std::span<Amplitude>(amps), gate, act);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(amps.size()));
}

template <auto Marginal>
void BM_LeadingMarginal(benchmark::State& state) {
  const auto amps = random_amplitudes(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Marginal(std::span<const Amplitude>(amps), 6));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(amps.size()));
}

template <auto Coefficients>
void BM_PauliCoefficients(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const auto h = symmetric(1 << q);
  for (auto _ : state) benchmark::DoNotOptimize(Coefficients(h, q));
}

}  // namespace

BENCHMARK(BM_ApplyBlock<serial::apply_block>)->Name("apply_block/serial")->DenseRange(16, 22, 3);
BENCHMARK(BM_ApplyBlock<parallel::apply_block>)->Name("apply_block/parallel")->DenseRange(16, 22, 3)->UseRealTime();
BENCHMARK(BM_LeadingMarginal<serial::leading_marginal>)->Name("leading_marginal/serial")->DenseRange(16, 22, 3);
BENCHMARK(BM_LeadingMarginal<parallel::leading_marginal>)
    ->Name("leading_marginal/parallel")
    ->DenseRange(16, 22, 3)
    ->UseRealTime();
BENCHMARK(BM_PauliCoefficients<serial::pauli_coefficients>)->Name("pauli_coefficients/serial")->DenseRange(4, 8, 2);
BENCHMARK(BM_PauliCoefficients<parallel::pauli_coefficients>)
    ->Name("pauli_coefficients/parallel")
    ->DenseRange(4, 8, 2)
    ->UseRealTime();

BENCHMARK_MAIN();
