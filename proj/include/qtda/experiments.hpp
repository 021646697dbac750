#pragma once

// Shots x precision sweeps over random clique complexes, scored by the
// absolute error |beta_raw - beta| against the exact oracle.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qtda/complex.hpp"
#include "qtda/qpe.hpp"

namespace qtda {

enum class KPolicy {
  LargestWithCoface,  // largest k with nonempty S_{k+1}, lowered until it fits the budget
  AllNonempty,        // every k with nonempty S_k that fits the budget
  Fixed,              // SweepConfig::fixed_k
};

struct SweepConfig {
  std::vector<int> n_values{5, 10, 15};
  int complexes_per_n = 100;
  std::vector<long> shot_grid{100, 1000, 10000};
  std::vector<int> precision_grid{1, 2, 3, 4, 5};
  KPolicy k_policy = KPolicy::LargestWithCoface;
  int fixed_k = 1;
  double edge_prob = 0.5;
  std::uint64_t base_seed = 0;
  double delta = kDefaultDelta;
  MixedStateMode mixed_state = MixedStateMode::AuxiliaryCircuit;
  // Wall time breaks byte-identical output, so it is opt-in.
  bool record_timing = false;

  void validate() const;
};

struct TrialRecord {
  int n = 0;
  std::uint64_t seed = 0;  // seed of the random complex
  int k = 0;
  int exact_beta = 0;
  double beta_raw = 0.0;
  long beta_rounded = 0;
  long shots = 0;
  int precision = 0;
  double abs_error = 0.0;
  double wall_ms = 0.0;
};

struct SkippedCell {
  int n = 0;
  std::uint64_t seed = 0;
  int k = 0;
  std::string reason;
};

struct SweepResult {
  std::vector<TrialRecord> records;
  std::vector<SkippedCell> skipped;
};

struct CellSummary {
  int n = 0;
  long shots = 0;
  int precision = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
  std::size_t count = 0;
};

// Seed of the c-th complex for a given n.
std::uint64_t complex_seed(std::uint64_t base_seed, int n, int index);

// Dimensions the policy selects for `complex` given the largest precision used.
std::vector<int> select_dimensions(const SimplicialComplex& complex, const SweepConfig& cfg);

SweepResult run_sweep(const SweepConfig& cfg);

// Linear-interpolation quantile of sorted data, f in [0, 1].
double quantile_sorted(const std::vector<double>& sorted, double f);

// Grouped by (n, shots, precision) in ascending order.
std::vector<CellSummary> summarize(const std::vector<TrialRecord>& records);

void write_results_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& cells);

}  // namespace qtda
