// qtda: command-line front end for the Betti-number pipelines.
//
// Exit codes: 0 ok, 1 golden mismatch or other failure, 2 empty dimension,
// 3 resource budget, 64 usage.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtda/complex.hpp"
#include "qtda/errors.hpp"
#include "qtda/experiments.hpp"
#include "qtda/io.hpp"
#include "qtda/kernels.hpp"
#include "qtda/ml.hpp"
#include "qtda/qpe.hpp"
#include "qtda/spectral.hpp"
#include "worked_example.hpp"

#ifndef QTDA_VERSION
#define QTDA_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitGolden = 1;
constexpr int kExitEmpty = 2;
constexpr int kExitResource = 3;
constexpr int kExitUsage = 64;

struct GoldenMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 0;
  std::string output;
  std::string format = "json";
};

// Collects files under --output and writes manifest.json last.
class OutputDir {
 public:
  OutputDir(const Globals& g, std::string subcommand, std::string config)
      : root_(g.output), seed_(g.seed), subcommand_(std::move(subcommand)), config_(std::move(config)) {
    if (!root_.empty()) fs::create_directories(root_);
  }

  bool enabled() const { return !root_.empty(); }
  void add_input(const std::string& path) { inputs_.push_back(path); }

  void write(const std::string& name, const std::string& content) {
    if (!enabled()) return;
    std::ofstream out(fs::path(root_) / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + (fs::path(root_) / name).string() + "'");
    out << content;
    outputs_.push_back(name);
  }

  void finish() {
    if (!enabled()) return;
    ordered_json m;
    m["tool"] = "qtda";
    m["version"] = QTDA_VERSION;
    m["subcommand"] = subcommand_;
    m["seed"] = seed_;
    m["inputs"] = inputs_;
    m["outputs"] = outputs_;
    m["config"] = config_;
    std::ofstream out(fs::path(root_) / "manifest.json", std::ios::binary);
    out << m.dump(2) << '\n';
  }

 private:
  std::string root_;
  std::uint64_t seed_;
  std::string subcommand_;
  std::string config_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
};

std::string resolved_config(const Globals& g, const CLI::App& sub) {
  std::ostringstream os;
  os << "seed=" << g.seed << "\n";
  os << "output=\"" << g.output << "\"\n";
  os << "format=\"" << g.format << "\"\n";
  os << "[" << sub.get_name() << "]\n";
  os << sub.config_to_str(true, false);
  return os.str();
}

void print_config(const std::string& config) {
  std::cerr << "# resolved configuration\n" << config << "\n";
}

void print_int_matrix(const std::string& title, const qtda::IntMatrix& m) {
  std::cout << title << " (" << m.rows() << "x" << m.cols() << ")\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) std::cout << std::setw(4) << m(r, c);
    std::cout << '\n';
  }
  std::cout << '\n';
}

void print_real_matrix(const std::string& title, const Eigen::MatrixXd& m) {
  std::cout << title << " (" << m.rows() << "x" << m.cols() << ")\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) std::cout << std::setw(7) << qtda::format_double(m(r, c));
    std::cout << '\n';
  }
  std::cout << '\n';
}

template <typename Matrix>
std::optional<std::string> compare_matrix(const std::string& name, const Matrix& got,
                                          const std::vector<std::vector<long>>& want) {
  const auto rows = static_cast<Eigen::Index>(want.size());
  const auto cols = static_cast<Eigen::Index>(want.front().size());
  if (got.rows() != rows || got.cols() != cols) {
    return name + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
           std::to_string(got.rows()) + "x" + std::to_string(got.cols());
  }
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      if (static_cast<double>(got(r, c)) != static_cast<double>(want[r][c])) {
        std::ostringstream os;
        os << name << "[" << r << "][" << c << "]: expected " << want[r][c] << ", got " << got(r, c);
        return os.str();
      }
  return std::nullopt;
}

std::string estimate_csv(const qtda::BettiEstimate& e) {
  std::ostringstream os;
  os << "q,p,shots,p_zero,beta_raw,beta\n"
     << e.q << ',' << e.p << ',' << e.shots << ',' << qtda::format_double(e.p_zero) << ','
     << qtda::format_double(e.beta_raw) << ',' << e.beta_rounded << '\n';
  return os.str();
}

// --- betti ---------------------------------------------------------------

struct BettiArgs {
  std::string points;
  bool header = false;
  double epsilon = 0.0;
  int k = 1;
  int precision = 3;
  long shots = 1000;
  std::string mode = "exact";
  int trotter_steps = 1;
  std::string mixed = "auxiliary-circuit";
  double delta = qtda::kDefaultDelta;
  bool analytic = false;
};

int run_betti(const Globals& g, const BettiArgs& a, const std::string& config) {
  print_config(config);
  OutputDir out(g, "betti", config);
  out.add_input(a.points);

  const auto cloud = qtda::read_point_cloud_file(a.points, a.header);
  const auto complex = qtda::build_complex(qtda::build_rips_graph(cloud, a.epsilon), a.k + 1);
  if (complex.count(a.k) == 0) {
    throw qtda::EmptyDimensionError("S_" + std::to_string(a.k) + " is empty at epsilon " +
                                    qtda::format_double(a.epsilon));
  }
  qtda::QpeConfig cfg;
  cfg.precision_qubits = a.precision;
  cfg.shots = a.shots;
  cfg.seed = g.seed;
  cfg.evolution = qtda::parse_evolution_mode(a.mode);
  cfg.trotter_steps = a.trotter_steps;
  cfg.mixed_state = qtda::parse_mixed_state_mode(a.mixed);
  cfg.validate();
  int q = 1;
  while ((std::size_t{1} << q) < complex.count(a.k)) ++q;
  if (!a.analytic && qtda::required_qubits(q, cfg) > qtda::kMaxTotalQubits) {
    throw qtda::ResourceError("|S_" + std::to_string(a.k) + "| = " + std::to_string(complex.count(a.k)) +
                              " needs " + std::to_string(qtda::required_qubits(q, cfg)) +
                              " qubits (budget " + std::to_string(qtda::kMaxTotalQubits) + ")");
  }
  const int exact = qtda::exact_betti(complex, a.k);
  const auto ham = qtda::prepare_hamiltonian(qtda::laplacian(complex, a.k), a.delta);

  const auto start = std::chrono::steady_clock::now();
  const auto est = a.analytic ? qtda::analytic_betti(ham, a.precision) : qtda::qpe_betti(ham, cfg);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  std::cout << "|S_" << a.k << "|        " << complex.count(a.k) << '\n'
            << "q           " << est.q << '\n'
            << "p           " << est.p << '\n'
            << "shots       " << (a.analytic ? std::string("analytic") : std::to_string(est.shots)) << '\n'
            << "p(0)        " << qtda::format_double(est.p_zero) << '\n'
            << "beta raw    " << qtda::format_double(est.beta_raw) << '\n'
            << "beta        " << est.beta_rounded << '\n'
            << "exact beta  " << exact << '\n'
            << "time        " << std::fixed << std::setprecision(2) << ms << " ms\n";
  std::cout.unsetf(std::ios::fixed);

  if (g.format == "csv") {
    out.write("estimate.csv", estimate_csv(est));
  } else {
    out.write("estimate.json", est.to_json() + "\n");
  }
  out.finish();
  return 0;
}

// --- example -------------------------------------------------------------

struct ExampleArgs {
  int precision = 3;
  long shots = 1000;
};

int run_example(const Globals& g, const ExampleArgs& a, const std::string& config) {
  using namespace qtda::cli;
  print_config(config);
  OutputDir out(g, "example", config);
  std::optional<std::string> mismatch;
  auto note = [&](std::optional<std::string> m) {
    if (m && !mismatch) mismatch = std::move(m);
  };

  const auto complex = worked_example_complex();
  const auto d1 = qtda::boundary_matrix(complex, 1).entries;
  const auto d2 = qtda::boundary_matrix(complex, 2).entries;
  const auto lap = qtda::laplacian(complex, 1);
  const auto padded = qtda::pad_laplacian(lap);
  const auto ham = qtda::scale_hamiltonian(padded, qtda::kDefaultDelta);

  print_int_matrix("boundary d1", d1);
  note(compare_matrix("d1", d1, kGoldenBoundary1));
  print_int_matrix("boundary d2", d2);
  note(compare_matrix("d2", d2, kGoldenBoundary2));
  print_int_matrix("laplacian L1", lap.entries);
  note(compare_matrix("L1", lap.entries, kGoldenLaplacian1));
  print_real_matrix("padded laplacian", padded.matrix);
  note(compare_matrix("padded L1", padded.matrix, kGoldenPadded1));

  std::cout << "lambda max  " << qtda::format_double(ham.lambda_max_bound) << "\n\n";
  if (ham.lambda_max_bound != kGoldenLambdaMax) {
    note("lambda max: expected " + qtda::format_double(kGoldenLambdaMax) + ", got " +
         qtda::format_double(ham.lambda_max_bound));
  }
  note(compare_matrix("H", ham.matrix, kGoldenPadded1));

  const auto decomp = qtda::pauli_decompose(ham);
  std::cout << "pauli terms (" << decomp.terms.size() << ")\n" << qtda::format_decomposition(decomp) << '\n';
  if (decomp.terms.size() != kGoldenPauliTerms.size()) {
    note("pauli terms: expected " + std::to_string(kGoldenPauliTerms.size()) + ", got " +
         std::to_string(decomp.terms.size()));
  }
  for (const auto& [word, coef] : kGoldenPauliTerms) {
    const double got = decomp.coefficient(word);
    if (std::abs(got - coef) > 1e-10) {
      note("pauli " + word + ": expected " + qtda::format_double(coef) + ", got " + qtda::format_double(got));
    }
  }

  qtda::QpeConfig cfg;
  cfg.precision_qubits = a.precision;
  cfg.shots = a.shots;
  cfg.seed = g.seed;
  const auto est = qtda::qpe_betti(ham, cfg);
  const double analytic = qtda::analytic_zero_probability(ham, a.precision);
  std::cout << "p(0)        " << qtda::format_double(est.p_zero) << "  (analytic "
            << qtda::format_double(analytic) << ")\n"
            << "beta raw    " << qtda::format_double(est.beta_raw) << '\n'
            << "beta        " << est.beta_rounded << "  (exact " << qtda::exact_betti(complex, 1) << ")\n";
  if (est.beta_rounded != kGoldenBeta1) {
    note("beta: expected " + std::to_string(kGoldenBeta1) + ", got " + std::to_string(est.beta_rounded));
  }

  ordered_json report;
  report["lambda_max"] = ham.lambda_max_bound;
  report["pauli_terms"] = decomp.terms.size();
  report["estimate"] = ordered_json::parse(est.to_json());
  report["analytic_p_zero"] = analytic;
  report["golden_ok"] = !mismatch.has_value();
  if (g.format == "csv") {
    out.write("estimate.csv", estimate_csv(est));
  } else {
    out.write("example.json", report.dump(2) + "\n");
  }
  out.write("pauli_terms.txt", qtda::format_decomposition(decomp));
  out.finish();

  if (mismatch) throw GoldenMismatch(*mismatch);
  std::cout << "\ngolden comparison: ok\n";
  return 0;
}

// --- sweep ---------------------------------------------------------------

struct SweepArgs {
  std::string config_file;
  std::vector<int> n{5, 10, 15};
  int complexes = 100;
  std::vector<long> shots{100, 1000, 10000};
  std::vector<int> precision{1, 2, 3, 4, 5};
  std::string k_policy = "largest";
  int k = 1;
  double edge_prob = 0.5;
  double delta = qtda::kDefaultDelta;
  std::string mixed = "auxiliary-circuit";
  bool timing = false;
};

qtda::KPolicy parse_k_policy(const std::string& s) {
  if (s == "largest") return qtda::KPolicy::LargestWithCoface;
  if (s == "all") return qtda::KPolicy::AllNonempty;
  if (s == "fixed") return qtda::KPolicy::Fixed;
  throw qtda::ArgumentError("unknown k policy '" + s + "'");
}

// Values from --config; explicit flags win.
void merge_sweep_config(SweepArgs& a, const CLI::App& sub) {
  std::ifstream in(a.config_file);
  if (!in) throw qtda::ArgumentError("cannot open '" + a.config_file + "'");
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw qtda::ArgumentError("invalid sweep config: " + std::string(e.what()));
  }
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (j.contains(key) && sub.count(flag) == 0) {
      try {
        j.at(key).get_to(field);
      } catch (const nlohmann::json::exception& e) {
        throw qtda::ArgumentError(std::string("sweep config key '") + key + "': " + e.what());
      }
    }
  };
  take("n", "--n", a.n);
  take("complexes", "--complexes", a.complexes);
  take("shots", "--shots", a.shots);
  take("precision", "--precision", a.precision);
  take("k_policy", "--k-policy", a.k_policy);
  take("k", "--k", a.k);
  take("edge_prob", "--edge-prob", a.edge_prob);
  take("delta", "--delta", a.delta);
  take("mixed_state", "--mixed", a.mixed);
  take("timing", "--timing", a.timing);
  for (const auto& [key, value] : j.items()) {
    static const std::vector<std::string> known{"n",         "complexes", "shots", "precision",
                                                "k_policy",  "k",         "edge_prob", "delta",
                                                "mixed_state", "timing"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw qtda::ArgumentError("unknown sweep config key '" + key + "'");
    }
  }
}

int run_sweep_cmd(const Globals& g, SweepArgs a, const CLI::App& sub) {
  if (!a.config_file.empty()) merge_sweep_config(a, sub);
  std::ostringstream cfg_text;
  cfg_text << resolved_config(g, sub);
  const std::string config = cfg_text.str();
  print_config(config);
  OutputDir out(g, "sweep", config);
  if (!a.config_file.empty()) out.add_input(a.config_file);

  qtda::SweepConfig cfg;
  cfg.n_values = a.n;
  cfg.complexes_per_n = a.complexes;
  cfg.shot_grid = a.shots;
  cfg.precision_grid = a.precision;
  cfg.k_policy = parse_k_policy(a.k_policy);
  cfg.fixed_k = a.k;
  cfg.edge_prob = a.edge_prob;
  cfg.base_seed = g.seed;
  cfg.delta = a.delta;
  cfg.mixed_state = qtda::parse_mixed_state_mode(a.mixed);
  cfg.record_timing = a.timing;

  const auto result = qtda::run_sweep(cfg);
  const auto cells = qtda::summarize(result.records);

  std::cout << std::setw(4) << "n" << std::setw(8) << "shots" << std::setw(4) << "p" << std::setw(12)
            << "mean AE" << std::setw(12) << "median AE" << std::setw(7) << "count" << '\n';
  for (const auto& c : cells) {
    std::cout << std::setw(4) << c.n << std::setw(8) << c.shots << std::setw(4) << c.precision
              << std::setw(12) << qtda::format_double(std::round(c.mean * 1e4) / 1e4) << std::setw(12)
              << qtda::format_double(std::round(c.median * 1e4) / 1e4) << std::setw(7) << c.count << '\n';
  }
  std::cout << "records " << result.records.size() << ", skipped " << result.skipped.size() << '\n';

  std::ostringstream records, summary, skipped;
  qtda::write_results_csv(records, result.records);
  qtda::write_summary_csv(summary, cells);
  skipped << "n,seed,k,reason\n";
  for (const auto& s : result.skipped) {
    skipped << s.n << ',' << s.seed << ',' << s.k << ",\"" << s.reason << "\"\n";
  }
  out.write("results.csv", records.str());
  out.write("summary.csv", summary.str());
  out.write("skipped.csv", skipped.str());
  out.finish();
  return 0;
}

// --- decompose -----------------------------------------------------------

struct DecomposeArgs {
  std::string matrix;
  bool prepare = false;
  double delta = qtda::kDefaultDelta;
};

int run_decompose(const Globals& g, const DecomposeArgs& a, const std::string& config) {
  print_config(config);
  OutputDir out(g, "decompose", config);
  out.add_input(a.matrix);
  Eigen::MatrixXd m = qtda::read_matrix_file(a.matrix);
  if (a.prepare) m = qtda::scale_hamiltonian(qtda::pad_matrix(m), a.delta).matrix;
  const auto text = qtda::format_decomposition(qtda::pauli_decompose(m));
  std::cout << text;
  out.write("pauli_terms.txt", text);
  out.finish();
  return 0;
}

// --- classify ------------------------------------------------------------

struct ClassifyArgs {
  std::string train;
  bool header = false;
  bool synthetic = false;
  int per_class = 30;
  std::string kind = "series";
  int dimension = 2;
  int tau = 1;
  int stride = 16;
  double eps_min = 3.0;
  double eps_max = 5.0;
  int eps_steps = 50;
  double train_fraction = 0.2;
  std::string source = "sampled";
  int precision = 4;
  long shots = 100;
  std::string mixed = "auxiliary-circuit";
  bool round = false;
  double lr = 0.1;
  int epochs = 500;
  double l2 = 1e-3;
};

qtda::FeatureSource parse_source(const std::string& s) {
  if (s == "exact") return qtda::FeatureSource::Exact;
  if (s == "analytic") return qtda::FeatureSource::Analytic;
  if (s == "sampled") return qtda::FeatureSource::Sampled;
  throw qtda::ArgumentError("unknown feature source '" + s + "'");
}

int run_classify(const Globals& g, const ClassifyArgs& a, const CLI::App& sub, const std::string& config) {
  print_config(config);
  OutputDir out(g, "classify", config);

  std::vector<qtda::LabeledRow> rows;
  if (a.synthetic) {
    if (a.kind == "series") {
      qtda::SyntheticSeriesConfig sc;
      sc.per_class = a.per_class;
      sc.seed = g.seed;
      rows = qtda::synthetic_time_series(sc);
    } else {
      rows = qtda::synthetic_six_features(a.per_class, g.seed);
    }
  } else {
    if (a.train.empty()) throw qtda::ArgumentError("--train FILE or --synthetic is required");
    out.add_input(a.train);
    rows = qtda::read_labeled_file(a.train, a.header);
  }

  qtda::EmbeddingConfig embed;
  embed.dimension = a.dimension;
  embed.delay = a.tau;
  embed.stride = a.stride;
  const bool embedding_flags = sub.count("-d") + sub.count("--tau") + sub.count("--stride") > 0;
  if (a.synthetic && a.kind == "series" && !embedding_flags) embed = qtda::synthetic_embedding();

  std::vector<qtda::PointCloud> clouds;
  std::vector<int> labels;
  for (const auto& r : rows) {
    clouds.push_back(a.kind == "series" ? qtda::takens_embed(r.values, embed) : qtda::four_point_clouds(r.values));
    labels.push_back(r.label);
  }

  qtda::ClassificationConfig cfg;
  cfg.eps_min = a.eps_min;
  cfg.eps_max = a.eps_max;
  cfg.eps_steps = a.eps_steps;
  cfg.train_fraction = a.train_fraction;
  cfg.seed = g.seed;
  cfg.features.source = parse_source(a.source);
  cfg.features.qpe.precision_qubits = a.precision;
  cfg.features.qpe.shots = a.shots;
  cfg.features.qpe.seed = g.seed;
  cfg.features.qpe.mixed_state = qtda::parse_mixed_state_mode(a.mixed);
  cfg.features.qpe.validate();
  cfg.hyper = {a.lr, a.epochs, a.l2};
  cfg.round_features = a.round;

  const auto report = qtda::run_classification(clouds, labels, cfg);

  std::cout << "samples             " << clouds.size() << " (train " << report.split.train.size()
            << ", validation " << report.split.validation.size() << ")\n"
            << "epsilon             " << qtda::format_double(report.epsilon) << '\n'
            << "train accuracy      " << qtda::format_double(report.train_accuracy) << '\n'
            << "validation accuracy " << qtda::format_double(report.validation_accuracy) << '\n'
            << "feature MAE         " << qtda::format_double(report.feature_mae) << '\n';

  ordered_json metrics;
  metrics["samples"] = clouds.size();
  metrics["train_size"] = report.split.train.size();
  metrics["validation_size"] = report.split.validation.size();
  metrics["epsilon"] = report.epsilon;
  metrics["train_accuracy"] = report.train_accuracy;
  metrics["validation_accuracy"] = report.validation_accuracy;
  metrics["feature_mae"] = report.feature_mae;
  ordered_json curve = ordered_json::array();
  for (const auto& p : report.exact_sweep.curve) curve.push_back({{"epsilon", p.epsilon}, {"accuracy", p.accuracy}});
  metrics["exact_sweep"] = curve;

  std::ostringstream features, sweep;
  features << "label,beta0,beta1,epsilon\n";
  for (std::size_t i = 0; i < report.features.size(); ++i) {
    const auto& f = report.features[i];
    features << labels[i] << ',' << qtda::format_double(f.beta0) << ',' << qtda::format_double(f.beta1) << ','
             << qtda::format_double(f.epsilon) << '\n';
  }
  sweep << "epsilon,accuracy\n";
  for (const auto& p : report.exact_sweep.curve) {
    sweep << qtda::format_double(p.epsilon) << ',' << qtda::format_double(p.accuracy) << '\n';
  }

  if (g.format == "csv") {
    std::ostringstream m;
    m << "epsilon,train_accuracy,validation_accuracy,feature_mae\n"
      << qtda::format_double(report.epsilon) << ',' << qtda::format_double(report.train_accuracy) << ','
      << qtda::format_double(report.validation_accuracy) << ',' << qtda::format_double(report.feature_mae)
      << '\n';
    out.write("metrics.csv", m.str());
  } else {
    out.write("metrics.json", metrics.dump(2) + "\n");
  }
  out.write("features.csv", features.str());
  out.write("sweep.csv", sweep.str());
  out.finish();
  return 0;
}

// --- embed ---------------------------------------------------------------

struct EmbedArgs {
  std::string series;
  bool header = false;
  bool unlabeled = false;
  std::size_t row = 0;
  int dimension = 2;
  int tau = 1;
  int stride = 16;
};

int run_embed(const Globals& g, const EmbedArgs& a, const std::string& config) {
  print_config(config);
  OutputDir out(g, "embed", config);
  out.add_input(a.series);
  std::vector<double> values;
  if (a.unlabeled) {
    const auto rows = qtda::read_csv_file(a.series, a.header);
    if (a.row >= rows.size()) throw qtda::ArgumentError("row " + std::to_string(a.row) + " out of range");
    values = rows[a.row];
  } else {
    const auto rows = qtda::read_labeled_file(a.series, a.header);
    if (a.row >= rows.size()) throw qtda::ArgumentError("row " + std::to_string(a.row) + " out of range");
    values = rows[a.row].values;
  }
  qtda::EmbeddingConfig cfg;
  cfg.dimension = a.dimension;
  cfg.delay = a.tau;
  cfg.stride = a.stride;
  const auto cloud = qtda::takens_embed(values, cfg);
  std::cout << "series length " << values.size() << ", points " << cloud.size() << ", dimension "
            << cloud.dim() << '\n';
  std::ostringstream csv;
  qtda::write_point_cloud_csv(csv, cloud);
  out.write("points.csv", csv.str());
  out.finish();
  return 0;
}

void apply_thread_cap() {
  const char* env = std::getenv("QTDA_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) {
    std::cerr << "warning: ignoring QTDA_THREADS='" << env << "'\n";
    return;
  }
  qtda::kernels::set_max_threads(static_cast<int>(n));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Betti numbers of point clouds, exact and by simulated phase estimation", "qtda"};
  app.set_version_flag("--version", QTDA_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Base RNG seed")->capture_default_str();
  app.add_option("--output", g.output, "Directory for machine-readable outputs and manifest.json");
  app.add_option("--format", g.format, "Format of the primary output file")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  BettiArgs betti;
  auto* betti_cmd = app.add_subcommand("betti", "Estimate one Betti number of a point cloud");
  betti_cmd->add_option("--points", betti.points, "Point-cloud CSV")->required()->check(CLI::ExistingFile);
  betti_cmd->add_flag("--header", betti.header, "Skip the first CSV line");
  betti_cmd->add_option("--epsilon", betti.epsilon, "Grouping scale")->required()->check(CLI::NonNegativeNumber);
  betti_cmd->add_option("--k", betti.k, "Homology dimension")->capture_default_str()->check(CLI::NonNegativeNumber);
  betti_cmd->add_option("--precision", betti.precision, "Precision qubits")
      ->capture_default_str()
      ->check(CLI::Range(1, qtda::kMaxPrecisionQubits));
  betti_cmd->add_option("--shots", betti.shots, "Measurement shots")
      ->capture_default_str()
      ->check(CLI::Range(1L, 1000000000L));
  betti_cmd->add_option("--mode", betti.mode, "Evolution mode")
      ->capture_default_str()
      ->check(CLI::IsMember({"exact", "trotter"}));
  betti_cmd->add_option("--trotter-steps", betti.trotter_steps, "Trotter steps per U")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  betti_cmd->add_option("--mixed", betti.mixed, "Mixed-state preparation")
      ->capture_default_str()
      ->check(CLI::IsMember({"auxiliary-circuit", "sampled-basis"}));
  betti_cmd->add_option("--delta", betti.delta, "Spectral rescaling target")
      ->capture_default_str()
      ->check(CLI::Range(1e-12, qtda::kMaxDelta));
  betti_cmd->add_flag("--analytic", betti.analytic, "Shot-free zero-outcome probability");

  ExampleArgs example;
  auto* example_cmd = app.add_subcommand("example", "Run the built-in 5-vertex example against reference values");
  example_cmd->add_option("--precision", example.precision, "Precision qubits")
      ->capture_default_str()
      ->check(CLI::Range(1, qtda::kMaxPrecisionQubits));
  example_cmd->add_option("--shots", example.shots, "Measurement shots")
      ->capture_default_str()
      ->check(CLI::Range(1L, 1000000000L));

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Shots x precision sweep over random clique complexes");
  sweep_cmd->add_option("--config", sweep.config_file, "JSON file with sweep settings")->check(CLI::ExistingFile);
  sweep_cmd->add_option("--n", sweep.n, "Vertex counts")->capture_default_str()->delimiter(',');
  sweep_cmd->add_option("--complexes", sweep.complexes, "Random complexes per n")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--shots", sweep.shots, "Shot grid")->capture_default_str()->delimiter(',');
  sweep_cmd->add_option("--precision", sweep.precision, "Precision grid")->capture_default_str()->delimiter(',');
  sweep_cmd->add_option("--k-policy", sweep.k_policy, "Which dimensions to estimate")
      ->capture_default_str()
      ->check(CLI::IsMember({"largest", "all", "fixed"}));
  sweep_cmd->add_option("--k", sweep.k, "Dimension for --k-policy fixed")->capture_default_str();
  sweep_cmd->add_option("--edge-prob", sweep.edge_prob, "Edge probability")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  sweep_cmd->add_option("--delta", sweep.delta, "Spectral rescaling target")
      ->capture_default_str()
      ->check(CLI::Range(1e-12, qtda::kMaxDelta));
  sweep_cmd->add_option("--mixed", sweep.mixed, "Mixed-state preparation")
      ->capture_default_str()
      ->check(CLI::IsMember({"auxiliary-circuit", "sampled-basis"}));
  sweep_cmd->add_flag("--timing", sweep.timing, "Record wall time per trial (output no longer reproducible)");

  DecomposeArgs decompose;
  auto* decompose_cmd = app.add_subcommand("decompose", "Pauli decomposition of a real symmetric matrix");
  decompose_cmd->add_option("--matrix", decompose.matrix, "Square matrix CSV, 2^q rows")
      ->required()
      ->check(CLI::ExistingFile);
  decompose_cmd->add_flag("--prepare", decompose.prepare, "Pad and rescale first");
  decompose_cmd->add_option("--delta", decompose.delta, "Rescaling target with --prepare")
      ->capture_default_str()
      ->check(CLI::Range(1e-12, qtda::kMaxDelta));

  ClassifyArgs classify;
  auto* classify_cmd = app.add_subcommand("classify", "Betti-feature logistic classification");
  auto* train_opt = classify_cmd->add_option("--train", classify.train, "Labeled CSV: label,v1,v2,...")
                        ->check(CLI::ExistingFile);
  auto* synth_opt = classify_cmd->add_flag("--synthetic", classify.synthetic, "Use the built-in synthetic corpus");
  train_opt->excludes(synth_opt);
  classify_cmd->add_flag("--header", classify.header, "Skip the first CSV line");
  classify_cmd->add_option("--per-class", classify.per_class, "Synthetic samples per class")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  classify_cmd->add_option("--kind", classify.kind, "series: delay-embed rows; six: 4-point clouds from 6 features")
      ->capture_default_str()
      ->check(CLI::IsMember({"series", "six"}));
  classify_cmd->add_option("-d,--dimension", classify.dimension, "Embedding dimension")
      ->capture_default_str()
      ->check(CLI::Range(2, 64));
  classify_cmd->add_option("--tau", classify.tau, "Embedding delay")->capture_default_str()->check(CLI::PositiveNumber);
  classify_cmd->add_option("--stride", classify.stride, "Embedding stride")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  classify_cmd->add_option("--eps-min", classify.eps_min, "Sweep start")->capture_default_str();
  classify_cmd->add_option("--eps-max", classify.eps_max, "Sweep end")->capture_default_str();
  classify_cmd->add_option("--eps-steps", classify.eps_steps, "Sweep points")
      ->capture_default_str()
      ->check(CLI::Range(2, 100000));
  classify_cmd->add_option("--train-fraction", classify.train_fraction, "Training share")
      ->capture_default_str()
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  classify_cmd->add_option("--source", classify.source, "Feature estimator")
      ->capture_default_str()
      ->check(CLI::IsMember({"exact", "analytic", "sampled"}));
  classify_cmd->add_option("--precision", classify.precision, "Precision qubits")
      ->capture_default_str()
      ->check(CLI::Range(1, qtda::kMaxPrecisionQubits));
  classify_cmd->add_option("--shots", classify.shots, "Measurement shots")
      ->capture_default_str()
      ->check(CLI::Range(1L, 1000000000L));
  classify_cmd->add_option("--mixed", classify.mixed, "Mixed-state preparation")
      ->capture_default_str()
      ->check(CLI::IsMember({"auxiliary-circuit", "sampled-basis"}));
  classify_cmd->add_flag("--round", classify.round, "Round estimated features before training");
  classify_cmd->add_option("--lr", classify.lr, "Learning rate")->capture_default_str()->check(CLI::PositiveNumber);
  classify_cmd->add_option("--epochs", classify.epochs, "Gradient steps")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  classify_cmd->add_option("--l2", classify.l2, "L2 penalty")->capture_default_str()->check(CLI::NonNegativeNumber);

  EmbedArgs embed;
  auto* embed_cmd = app.add_subcommand("embed", "Delay-embed one time series into a point cloud");
  embed_cmd->add_option("--series", embed.series, "Time-series CSV (label,v1,v2,...)")
      ->required()
      ->check(CLI::ExistingFile);
  embed_cmd->add_flag("--header", embed.header, "Skip the first CSV line");
  embed_cmd->add_flag("--unlabeled", embed.unlabeled, "Rows carry no leading label");
  embed_cmd->add_option("--row", embed.row, "Row to embed")->capture_default_str();
  embed_cmd->add_option("-d,--dimension", embed.dimension, "Embedding dimension")
      ->capture_default_str()
      ->check(CLI::Range(2, 64));
  embed_cmd->add_option("--tau", embed.tau, "Embedding delay")->capture_default_str()->check(CLI::PositiveNumber);
  embed_cmd->add_option("--stride", embed.stride, "Embedding stride")->capture_default_str()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  apply_thread_cap();
  try {
    if (betti_cmd->parsed()) return run_betti(g, betti, resolved_config(g, *betti_cmd));
    if (example_cmd->parsed()) return run_example(g, example, resolved_config(g, *example_cmd));
    if (sweep_cmd->parsed()) return run_sweep_cmd(g, sweep, *sweep_cmd);
    if (decompose_cmd->parsed()) return run_decompose(g, decompose, resolved_config(g, *decompose_cmd));
    if (classify_cmd->parsed()) return run_classify(g, classify, *classify_cmd, resolved_config(g, *classify_cmd));
    if (embed_cmd->parsed()) return run_embed(g, embed, resolved_config(g, *embed_cmd));
  } catch (const GoldenMismatch& e) {
    std::cout.flush();
    std::cerr << "golden mismatch: " << e.what() << '\n';
    return kExitGolden;
  } catch (const qtda::EmptyDimensionError& e) {
    std::cout.flush();
    std::cerr << "error: " << e.what() << '\n';
    return kExitEmpty;
  } catch (const qtda::ResourceError& e) {
    std::cout.flush();
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const qtda::ArgumentError& e) {
    std::cout.flush();
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cout.flush();
    std::cerr << "error: " << e.what() << '\n';
    return kExitGolden;
  }
  return kExitUsage;
}
