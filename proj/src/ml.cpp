#include "qtda/ml.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>

#include "qtda/errors.hpp"

namespace qtda {

void EmbeddingConfig::validate() const {
  if (dimension < 2) throw ArgumentError("embedding dimension must be >= 2");
  if (delay < 1) throw ArgumentError("embedding delay must be >= 1");
  if (stride < 1) throw ArgumentError("embedding stride must be >= 1");
}

std::size_t takens_point_count(std::size_t length, const EmbeddingConfig& cfg) {
  const std::size_t window = static_cast<std::size_t>(cfg.dimension - 1) * cfg.delay + 1;
  if (length < window) return 0;
  return (length - window) / static_cast<std::size_t>(cfg.stride) + 1;
}

PointCloud takens_embed(std::span<const double> series, const EmbeddingConfig& cfg) {
  cfg.validate();
  const std::size_t count = takens_point_count(series.size(), cfg);
  if (count == 0) {
    throw ArgumentError("series of length " + std::to_string(series.size()) +
                        " is shorter than the embedding window");
  }
  std::vector<std::vector<double>> points(count, std::vector<double>(cfg.dimension));
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t t = i * cfg.stride;
    for (int d = 0; d < cfg.dimension; ++d) points[i][d] = series[t + static_cast<std::size_t>(d) * cfg.delay];
  }
  return PointCloud(std::move(points));
}

PointCloud four_point_clouds(std::span<const double> f) {
  if (f.size() != 6) throw ArgumentError("expected exactly 6 features, got " + std::to_string(f.size()));
  std::vector<std::vector<double>> points;
  for (std::size_t start = 0; start < 4; ++start) points.push_back({f[start], f[start + 1], f[start + 2]});
  return PointCloud(std::move(points));
}

namespace {

double estimate_dimension(const SimplicialComplex& complex, int k, const FeatureOptions& opts,
                          std::uint64_t seed) {
  if (opts.source == FeatureSource::Exact) return exact_betti(complex, k);
  const std::size_t count = complex.count(k);
  if (count == 0) return 0.0;
  QpeConfig cfg = opts.qpe;
  cfg.seed = seed;
  int q = 1;
  while ((std::size_t{1} << q) < count) ++q;
  if (opts.source == FeatureSource::Sampled && required_qubits(q, cfg) > kMaxTotalQubits) {
    throw ResourceError("|S_" + std::to_string(k) + "| = " + std::to_string(count) + " needs " +
                        std::to_string(required_qubits(q, cfg)) + " qubits, over the budget of " +
                        std::to_string(kMaxTotalQubits));
  }
  const auto ham = prepare_hamiltonian(laplacian(complex, k), opts.delta);
  if (opts.source == FeatureSource::Analytic) return analytic_betti(ham, cfg.precision_qubits).beta_raw;
  return qpe_betti(ham, cfg).beta_raw;
}

}  // namespace

FeatureVector extract_features(const PointCloud& cloud, double epsilon, const FeatureOptions& opts) {
  if (cloud.size() == 0) throw ArgumentError("empty point cloud");
  const auto complex = build_complex(build_rips_graph(cloud, epsilon), 2);
  FeatureVector f;
  f.epsilon = epsilon;
  f.beta0 = estimate_dimension(complex, 0, opts, derive_seed({opts.qpe.seed, 0}));
  f.beta1 = estimate_dimension(complex, 1, opts, derive_seed({opts.qpe.seed, 1}));
  return f;
}

FeatureVector extract_features(const PointCloud& cloud, double epsilon, const QpeConfig& cfg) {
  FeatureOptions opts;
  opts.qpe = cfg;
  return extract_features(cloud, epsilon, opts);
}

FeatureVector exact_features(const PointCloud& cloud, double epsilon) {
  FeatureOptions opts;
  opts.source = FeatureSource::Exact;
  return extract_features(cloud, epsilon, opts);
}

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + e^z) without overflow
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

}  // namespace

double LogisticModel::probability(std::span<const double> x) const {
  const auto d = mean.size();
  double z = weights[d];
  for (Eigen::Index j = 0; j < d; ++j) z += weights[j] * (x[j] - mean[j]) / scale[j];
  return sigmoid(z);
}

LogisticModel train_logistic(const std::vector<std::vector<double>>& features,
                             const std::vector<int>& labels, const LogisticHyper& hyper) {
  if (features.size() != labels.size() || features.empty()) {
    throw ArgumentError("features and labels must be nonempty and the same length");
  }
  const bool has0 = std::find(labels.begin(), labels.end(), 0) != labels.end();
  const bool has1 = std::find(labels.begin(), labels.end(), 1) != labels.end();
  for (int y : labels)
    if (y != 0 && y != 1) throw ArgumentError("labels must be 0 or 1");
  if (!has0 || !has1) throw DegenerateDataError("training labels contain a single class");

  const auto n = static_cast<Eigen::Index>(features.size());
  const auto d = static_cast<Eigen::Index>(features.front().size());
  Eigen::MatrixXd x(n, d + 1);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(features[i].size()) != d) throw ArgumentError("ragged feature rows");
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = features[i][j];
    x(i, d) = 1.0;
    y[i] = labels[i];
  }

  LogisticModel model;
  model.hyper = hyper;
  model.mean = x.leftCols(d).colwise().mean().transpose();
  model.scale = Eigen::VectorXd::Ones(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double var = (x.col(j).array() - model.mean[j]).square().mean();
    if (var > 1e-24) model.scale[j] = std::sqrt(var);
    x.col(j) = (x.col(j).array() - model.mean[j]) / model.scale[j];
  }

  Eigen::VectorXd w = Eigen::VectorXd::Zero(d + 1);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    const Eigen::VectorXd z = x * w;
    double loss = 0.0;
    Eigen::VectorXd residual(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      loss += softplus(z[i]) - y[i] * z[i];
      residual[i] = sigmoid(z[i]) - y[i];
    }
    Eigen::VectorXd grad = x.transpose() * residual * inv_n;
    // Bias is not regularized.
    loss = loss * inv_n + 0.5 * hyper.l2 * w.head(d).squaredNorm();
    grad.head(d) += hyper.l2 * w.head(d);
    model.loss_history.push_back(loss);
    w -= hyper.learning_rate * grad;
  }
  if (!w.allFinite()) throw NumericError("logistic weights diverged");
  model.weights = w;
  return model;
}

std::vector<int> predict(const LogisticModel& model, const std::vector<std::vector<double>>& features) {
  std::vector<int> out;
  out.reserve(features.size());
  for (const auto& f : features) out.push_back(model.probability(f) >= 0.5 ? 1 : 0);
  return out;
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size() || truth.empty()) {
    throw ArgumentError("accuracy needs equal-length, nonempty label vectors");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

Split stratified_split(const std::vector<int>& labels, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ArgumentError("train fraction must be in (0, 1)");
  std::mt19937_64 rng(seed);
  Split split;
  std::vector<int> classes(labels.begin(), labels.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  for (int c : classes) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == c) idx.push_back(i);
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto take = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::lround(train_fraction * static_cast<double>(idx.size()))), 1,
        idx.size());
    split.train.insert(split.train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take));
    split.validation.insert(split.validation.end(), idx.begin() + static_cast<std::ptrdiff_t>(take), idx.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.validation.begin(), split.validation.end());
  return split;
}

std::vector<std::vector<double>> as_rows(const std::vector<FeatureVector>& features) {
  std::vector<std::vector<double>> rows;
  rows.reserve(features.size());
  for (const auto& f : features) rows.push_back({f.beta0, f.beta1});
  return rows;
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 2) throw ArgumentError("a sweep needs at least 2 steps");
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) out[i] = lo + (hi - lo) * i / (steps - 1);
  return out;
}

namespace {

std::vector<FeatureVector> features_for_all(const std::vector<PointCloud>& clouds, double epsilon,
                                            const FeatureOptions& opts, std::uint64_t stream) {
  std::vector<FeatureVector> out(clouds.size());
  std::vector<std::exception_ptr> errors(clouds.size());
  const auto count = static_cast<std::ptrdiff_t>(clouds.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    FeatureOptions local = opts;
    local.qpe.seed = derive_seed({opts.qpe.seed, stream, static_cast<std::uint64_t>(i)});
    try {
      out[i] = extract_features(clouds[i], epsilon, local);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

template <typename T>
std::vector<T> pick(const std::vector<T>& v, const std::vector<std::size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(v[i]);
  return out;
}

double mean_abs_error(const std::vector<FeatureVector>& a, const std::vector<FeatureVector>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i].beta0 - b[i].beta0) + std::abs(a[i].beta1 - b[i].beta1);
  return acc / (2.0 * static_cast<double>(a.size()));
}

}  // namespace

ScaleSweep grouping_scale_sweep(const std::vector<PointCloud>& clouds, const std::vector<int>& labels,
                                double eps_min, double eps_max, int steps, const FeatureOptions& opts,
                                const LogisticHyper& hyper) {
  if (clouds.size() != labels.size()) throw ArgumentError("clouds and labels differ in length");
  ScaleSweep sweep;
  const auto grid = linspace(eps_min, eps_max, steps);
  for (std::size_t s = 0; s < grid.size(); ++s) {
    const auto rows = as_rows(features_for_all(clouds, grid[s], opts, s));
    const auto model = train_logistic(rows, labels, hyper);
    sweep.curve.push_back({grid[s], accuracy(predict(model, rows), labels)});
    if (sweep.curve.back().accuracy > sweep.curve[sweep.best].accuracy) sweep.best = s;
  }
  return sweep;
}

ClassificationReport run_classification(const std::vector<PointCloud>& clouds,
                                        const std::vector<int>& labels,
                                        const ClassificationConfig& cfg) {
  if (clouds.size() != labels.size() || clouds.empty()) {
    throw ArgumentError("clouds and labels must be nonempty and the same length");
  }
  ClassificationReport report;
  report.split = stratified_split(labels, cfg.train_fraction, cfg.seed);
  const auto train_clouds = pick(clouds, report.split.train);
  const auto train_labels = pick(labels, report.split.train);

  FeatureOptions exact;
  exact.source = FeatureSource::Exact;
  report.exact_sweep =
      grouping_scale_sweep(train_clouds, train_labels, cfg.eps_min, cfg.eps_max, cfg.eps_steps, exact, cfg.hyper);
  report.epsilon = report.exact_sweep.best_epsilon();

  report.features = features_for_all(clouds, report.epsilon, cfg.features, 0xfea7);
  report.exact = features_for_all(clouds, report.epsilon, exact, 0);
  report.feature_mae = mean_abs_error(report.features, report.exact);

  auto rows = as_rows(report.features);
  if (cfg.round_features) {
    for (auto& r : rows)
      for (double& v : r) v = static_cast<double>(round_half_even(v));
  }
  const auto model = train_logistic(pick(rows, report.split.train), train_labels, cfg.hyper);
  report.train_accuracy = accuracy(predict(model, pick(rows, report.split.train)), train_labels);
  if (!report.split.validation.empty()) {
    report.validation_accuracy =
        accuracy(predict(model, pick(rows, report.split.validation)), pick(labels, report.split.validation));
  }
  return report;
}

EmbeddingConfig synthetic_embedding(const SyntheticSeriesConfig& cfg) {
  if (cfg.period % 8 != 0) throw ArgumentError("synthetic period must be a multiple of 8");
  // Quarter-period delay turns the sinusoid into a circle; a stride of 9/8
  // periods advances the phase by 1/8 turn per point.
  EmbeddingConfig e;
  e.dimension = 2;
  e.delay = cfg.period / 4;
  e.stride = cfg.period + cfg.period / 8;
  return e;
}

std::vector<LabeledRow> synthetic_time_series(const SyntheticSeriesConfig& cfg) {
  if (cfg.per_class < 1 || cfg.length < 2) throw ArgumentError("invalid synthetic corpus size");
  const auto embed = synthetic_embedding(cfg);
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> noise(0.0, cfg.noise);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> spacing(cfg.ramp_spacing_min, cfg.ramp_spacing_max);
  std::uniform_real_distribution<double> offset(-1.0, 1.0);
  std::vector<LabeledRow> rows;
  for (int i = 0; i < cfg.per_class; ++i) {
    for (int label : {0, 1}) {
      LabeledRow r{label, std::vector<double>(static_cast<std::size_t>(cfg.length))};
      if (label == 1) {
        const double phi = phase(rng);
        for (int t = 0; t < cfg.length; ++t) {
          r.values[t] = cfg.amplitude * std::sin(2.0 * std::numbers::pi * t / cfg.period + phi) + noise(rng);
        }
      } else {
        // Consecutive embedded points are sqrt(2) * slope * stride apart.
        const double slope = spacing(rng) / (std::numbers::sqrt2 * embed.stride);
        const double base = offset(rng);
        for (int t = 0; t < cfg.length; ++t) r.values[t] = base + slope * t + noise(rng);
      }
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

std::vector<LabeledRow> synthetic_six_features(int per_class, std::uint64_t seed) {
  if (per_class < 1) throw ArgumentError("per_class must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> jitter(0.0, 0.35);
  std::uniform_real_distribution<double> level(0.0, 2.0);
  std::uniform_real_distribution<double> gap(0.8, 1.6);
  std::vector<LabeledRow> rows;
  for (int i = 0; i < per_class; ++i) {
    for (int label : {0, 1}) {
      LabeledRow r{label, std::vector<double>(6)};
      const double a = level(rng);
      const double b = a + gap(rng);
      for (int j = 0; j < 6; ++j) r.values[j] = (label == 1 && (j % 2) ? b : a) + jitter(rng);
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

}  // namespace qtda
