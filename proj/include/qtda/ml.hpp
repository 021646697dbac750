#pragma once

// Time series / six-feature records -> point clouds -> Betti features ->
// logistic regression, plus the grouping-scale sweep used to pick epsilon.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qtda/complex.hpp"
#include "qtda/io.hpp"
#include "qtda/qpe.hpp"

namespace qtda {

struct EmbeddingConfig {
  int dimension = 2;
  int delay = 1;
  int stride = 16;  // 500 samples -> 32 points with the defaults

  void validate() const;
};

// floor((len - (d-1) tau - 1) / stride) + 1, or 0 if the series is too short.
std::size_t takens_point_count(std::size_t length, const EmbeddingConfig& cfg);

// x_t = (s_t, s_{t+tau}, ..., s_{t+(d-1)tau}) for t = 0, stride, 2 stride, ...
PointCloud takens_embed(std::span<const double> series, const EmbeddingConfig& cfg);

// Four 3-D points from windows (0,1,2), (1,2,3), (2,3,4), (3,4,5).
PointCloud four_point_clouds(std::span<const double> features6);

enum class FeatureSource { Exact, Analytic, Sampled };

struct FeatureOptions {
  FeatureSource source = FeatureSource::Sampled;
  QpeConfig qpe;  // precision/shots/seed for Sampled, precision for Analytic
  double delta = kDefaultDelta;
};

struct FeatureVector {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double epsilon = 0.0;
};

// Betti estimates for k = 0, 1 of the clique complex (max_dim 2) at epsilon.
// beta1 is 0 without running QPE when the complex has no edges. Throws
// ResourceError naming |S_k| when a dimension exceeds the qubit budget.
FeatureVector extract_features(const PointCloud& cloud, double epsilon, const FeatureOptions& opts);
FeatureVector extract_features(const PointCloud& cloud, double epsilon, const QpeConfig& cfg);
FeatureVector exact_features(const PointCloud& cloud, double epsilon);

struct LogisticHyper {
  double learning_rate = 0.1;
  int epochs = 500;
  double l2 = 1e-3;
};

struct LogisticModel {
  Eigen::VectorXd weights;  // one per feature, bias last (standardized inputs)
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;
  LogisticHyper hyper;
  std::vector<double> loss_history;  // per epoch, before the update

  double probability(std::span<const double> x) const;
};

// Full-batch gradient descent on L2-regularized cross-entropy. Features are
// standardized with training statistics. Throws DegenerateDataError when the
// labels contain a single class.
LogisticModel train_logistic(const std::vector<std::vector<double>>& features,
                             const std::vector<int>& labels, const LogisticHyper& hyper = {});
std::vector<int> predict(const LogisticModel& model, const std::vector<std::vector<double>>& features);
double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
};

// Seeded shuffle within each class; each class contributes
// max(1, round(fraction * size)) training samples.
Split stratified_split(const std::vector<int>& labels, double train_fraction, std::uint64_t seed);

std::vector<std::vector<double>> as_rows(const std::vector<FeatureVector>& features);

struct ScalePoint {
  double epsilon = 0.0;
  double accuracy = 0.0;
};

struct ScaleSweep {
  std::vector<ScalePoint> curve;
  std::size_t best = 0;  // first index with the highest accuracy
  double best_epsilon() const { return curve.at(best).epsilon; }
};

std::vector<double> linspace(double lo, double hi, int steps);

// Training accuracy of a logistic model fit at each epsilon in linspace(lo, hi, steps).
ScaleSweep grouping_scale_sweep(const std::vector<PointCloud>& clouds, const std::vector<int>& labels,
                                double eps_min, double eps_max, int steps, const FeatureOptions& opts,
                                const LogisticHyper& hyper = {});

struct ClassificationConfig {
  double eps_min = 3.0;
  double eps_max = 5.0;
  int eps_steps = 50;
  double train_fraction = 0.2;
  std::uint64_t seed = 0;
  FeatureOptions features;
  LogisticHyper hyper;
  bool round_features = false;
};

struct ClassificationReport {
  ScaleSweep exact_sweep;  // on the training split, exact features
  double epsilon = 0.0;
  double train_accuracy = 0.0;
  double validation_accuracy = 0.0;
  double feature_mae = 0.0;  // mean |estimate - exact| over both features
  std::vector<FeatureVector> features;
  std::vector<FeatureVector> exact;
  Split split;
};

// Picks epsilon by the exact-feature sweep on the training split, extracts
// features with `cfg.features` for every cloud, trains on the training split
// and scores the validation split.
ClassificationReport run_classification(const std::vector<PointCloud>& clouds,
                                        const std::vector<int>& labels,
                                        const ClassificationConfig& cfg);

// Synthetic corpora. Time series: class 1 is a sampled sinusoid whose delay
// embedding is a loop, class 0 a steep noisy ramp whose embedding is a line of
// widely spaced points.
struct SyntheticSeriesConfig {
  int per_class = 30;
  int length = 500;
  int period = 56;
  double amplitude = 1.0;
  double noise = 0.002;
  double ramp_spacing_min = 1.5;
  double ramp_spacing_max = 1.9;
  std::uint64_t seed = 0;
};

// Embedding matched to the synthetic series: 8 points, evenly spaced in phase.
EmbeddingConfig synthetic_embedding(const SyntheticSeriesConfig& cfg = {});
std::vector<LabeledRow> synthetic_time_series(const SyntheticSeriesConfig& cfg = {});

// Six-feature records: class 0 features cluster around a common level, class 1
// alternates between two levels.
std::vector<LabeledRow> synthetic_six_features(int per_class, std::uint64_t seed);

}  // namespace qtda
