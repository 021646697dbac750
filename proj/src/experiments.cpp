#include "qtda/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <tuple>

#include "qtda/errors.hpp"
#include "qtda/io.hpp"

namespace qtda {

namespace {

int qubits_for_count(std::size_t count) {
  int q = 1;
  while ((std::size_t{1} << q) < count) ++q;
  return q;
}

bool fits(const SimplicialComplex& c, int k, int max_p, MixedStateMode mode) {
  QpeConfig probe;
  probe.precision_qubits = max_p;
  probe.mixed_state = mode;
  return required_qubits(qubits_for_count(c.count(k)), probe) <= kMaxTotalQubits;
}

struct Instance {
  int n;
  std::uint64_t seed;
  int k;
  int exact;
  PaddedHamiltonian ham;
};

struct Cell {
  std::size_t instance;
  long shots;
  int precision;
};

}  // namespace

void SweepConfig::validate() const {
  if (n_values.empty() || shot_grid.empty() || precision_grid.empty()) {
    throw ArgumentError("sweep grids must be nonempty");
  }
  if (complexes_per_n < 1) throw ArgumentError("complexes_per_n must be >= 1");
  for (int n : n_values)
    if (n < 1) throw ArgumentError("n values must be >= 1");
  for (long s : shot_grid)
    if (s < 1) throw ArgumentError("shot counts must be >= 1");
  for (int p : precision_grid)
    if (p < 1 || p > kMaxPrecisionQubits) throw ArgumentError("precision out of range");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) throw ArgumentError("edge_prob must be in [0, 1]");
}

std::uint64_t complex_seed(std::uint64_t base_seed, int n, int index) {
  return derive_seed({base_seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(index)});
}

std::vector<int> select_dimensions(const SimplicialComplex& complex, const SweepConfig& cfg) {
  const int max_p = *std::max_element(cfg.precision_grid.begin(), cfg.precision_grid.end());
  std::vector<int> ks;
  switch (cfg.k_policy) {
    case KPolicy::LargestWithCoface: {
      int k = 0;
      for (int j = 0; j < complex.max_dim(); ++j) {
        if (complex.count(j + 1) > 0) k = j;
      }
      while (k > 0 && !fits(complex, k, max_p, cfg.mixed_state)) --k;
      if (fits(complex, k, max_p, cfg.mixed_state)) ks.push_back(k);
      break;
    }
    case KPolicy::AllNonempty:
      for (int k = 0; k <= complex.max_dim(); ++k) {
        if (complex.count(k) > 0 && fits(complex, k, max_p, cfg.mixed_state)) ks.push_back(k);
      }
      break;
    case KPolicy::Fixed:
      ks.push_back(cfg.fixed_k);
      break;
  }
  return ks;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  SweepResult result;
  std::vector<Instance> instances;
  for (int n : cfg.n_values) {
    for (int c = 0; c < cfg.complexes_per_n; ++c) {
      const auto seed = complex_seed(cfg.base_seed, n, c);
      const auto complex = random_complex(n, cfg.edge_prob, n - 1, seed);
      const auto ks = select_dimensions(complex, cfg);
      if (ks.empty()) {
        result.skipped.push_back({n, seed, -1, "no dimension fits the qubit budget"});
        continue;
      }
      for (int k : ks) {
        if (complex.count(k) == 0) {
          result.skipped.push_back({n, seed, k, "empty S_" + std::to_string(k)});
          continue;
        }
        instances.push_back({n, seed, k, exact_betti(complex, k),
                             prepare_hamiltonian(laplacian(complex, k), cfg.delta)});
      }
    }
  }

  std::vector<Cell> cells;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (long shots : cfg.shot_grid)
      for (int p : cfg.precision_grid) cells.push_back({i, shots, p});

  std::vector<std::optional<TrialRecord>> out(cells.size());
  std::vector<std::string> failures(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  const auto cell_count = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t idx = 0; idx < cell_count; ++idx) {
    const Cell& cell = cells[idx];
    const Instance& inst = instances[cell.instance];
    QpeConfig qcfg;
    qcfg.precision_qubits = cell.precision;
    qcfg.shots = cell.shots;
    qcfg.mixed_state = cfg.mixed_state;
    qcfg.seed = derive_seed({cfg.base_seed, static_cast<std::uint64_t>(idx), 0x5eedULL});
    try {
      const auto start = std::chrono::steady_clock::now();
      const auto est = qpe_betti(inst.ham, qcfg);
      const auto stop = std::chrono::steady_clock::now();
      TrialRecord r;
      r.n = inst.n;
      r.seed = inst.seed;
      r.k = inst.k;
      r.exact_beta = inst.exact;
      r.beta_raw = est.beta_raw;
      r.beta_rounded = est.beta_rounded;
      r.shots = cell.shots;
      r.precision = cell.precision;
      r.abs_error = std::abs(est.beta_raw - inst.exact);
      if (cfg.record_timing) r.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      out[idx] = r;
    } catch (const ResourceError& e) {
      failures[idx] = e.what();
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    if (out[idx]) {
      result.records.push_back(*out[idx]);
    } else {
      const Instance& inst = instances[cells[idx].instance];
      result.skipped.push_back({inst.n, inst.seed, inst.k, failures[idx]});
    }
  }
  return result;
}

double quantile_sorted(const std::vector<double>& sorted, double f) {
  if (sorted.empty()) throw ArgumentError("quantile of empty data");
  const double h = f * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<CellSummary> summarize(const std::vector<TrialRecord>& records) {
  std::map<std::tuple<int, long, int>, std::vector<double>> groups;
  for (const auto& r : records) groups[{r.n, r.shots, r.precision}].push_back(r.abs_error);
  std::vector<CellSummary> out;
  for (auto& [key, errors] : groups) {
    if (errors.empty()) continue;
    std::sort(errors.begin(), errors.end());
    CellSummary s;
    std::tie(s.n, s.shots, s.precision) = key;
    s.min = errors.front();
    s.q1 = quantile_sorted(errors, 0.25);
    s.median = quantile_sorted(errors, 0.5);
    s.q3 = quantile_sorted(errors, 0.75);
    s.max = errors.back();
    double sum = 0.0;
    for (double e : errors) sum += e;
    s.mean = sum / static_cast<double>(errors.size());
    s.count = errors.size();
    out.push_back(s);
  }
  return out;
}

void write_results_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "n,seed,k,exact_beta,beta_raw,beta_rounded,shots,precision,abs_error,wall_ms\n";
  for (const auto& r : records) {
    out << r.n << ',' << r.seed << ',' << r.k << ',' << r.exact_beta << ',' << format_double(r.beta_raw)
        << ',' << r.beta_rounded << ',' << r.shots << ',' << r.precision << ','
        << format_double(r.abs_error) << ',' << format_double(r.wall_ms) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& cells) {
  out << "n,shots,precision,min,q1,median,q3,max,mean,count\n";
  for (const auto& c : cells) {
    out << c.n << ',' << c.shots << ',' << c.precision << ',' << format_double(c.min) << ','
        << format_double(c.q1) << ',' << format_double(c.median) << ',' << format_double(c.q3) << ','
        << format_double(c.max) << ',' << format_double(c.mean) << ',' << c.count << '\n';
  }
}

}  // namespace qtda
