#include "qtda/experiments.hpp"

#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "qtda/errors.hpp"

using namespace qtda;

namespace {

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.n_values = {5, 6};
  cfg.complexes_per_n = 3;
  cfg.shot_grid = {100, 1000, 10000};
  cfg.precision_grid = {1, 2, 3, 4, 5};
  cfg.base_seed = 17;
  return cfg;
}

}  // namespace

TEST(Quantiles, LinearInterpolation) {
  const std::vector<double> v{1, 2, 3, 4, 5};
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.0), 1);
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.25), 2);
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.5), 3);
  EXPECT_DOUBLE_EQ(quantile_sorted({1, 2}, 0.25), 1.25);
  EXPECT_DOUBLE_EQ(quantile_sorted({7}, 0.75), 7);
  EXPECT_THROW(quantile_sorted({}, 0.5), ArgumentError);
}

TEST(Summaries, GroupByCell) {
  std::vector<TrialRecord> recs;
  for (int i = 0; i < 4; ++i) {
    TrialRecord r;
    r.n = 5;
    r.shots = 100;
    r.precision = 1;
    r.abs_error = i;
    recs.push_back(r);
  }
  recs.push_back({6, 0, 1, 0, 0.0, 0, 100, 1, 9.0, 0.0});
  const auto cells = summarize(recs);
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(cells[0].count, 4u);
  EXPECT_DOUBLE_EQ(cells[0].mean, 1.5);
  EXPECT_DOUBLE_EQ(cells[0].median, 1.5);
  EXPECT_DOUBLE_EQ(cells[0].max, 3);
  EXPECT_DOUBLE_EQ(cells[1].min, 9.0);
}

TEST(Sweep, DefaultGridGivesFifteenCellsPerN) {
  const auto result = run_sweep(small_config());
  const auto cells = summarize(result.records);
  std::map<int, int> per_n;
  for (const auto& c : cells) ++per_n[c.n];
  EXPECT_EQ(per_n[5], 15);
  EXPECT_EQ(per_n[6], 15);
}

TEST(Sweep, RecordsAreConsistent) {
  const auto result = run_sweep(small_config());
  ASSERT_FALSE(result.records.empty());
  for (const auto& r : result.records) {
    EXPECT_NEAR(r.abs_error, std::abs(r.beta_raw - r.exact_beta), 1e-12);
    EXPECT_EQ(r.wall_ms, 0.0);
    const auto c = random_complex(r.n, 0.5, r.n - 1, r.seed);
    EXPECT_EQ(r.exact_beta, exact_betti(c, r.k));
  }
}

TEST(Sweep, ByteIdenticalAcrossRuns) {
  std::ostringstream a, b;
  write_results_csv(a, run_sweep(small_config()).records);
  write_results_csv(b, run_sweep(small_config()).records);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')),
            "n,seed,k,exact_beta,beta_raw,beta_rounded,shots,precision,abs_error,wall_ms");
}

TEST(Sweep, TimingIsOptIn) {
  auto cfg = small_config();
  cfg.n_values = {5};
  cfg.complexes_per_n = 1;
  cfg.record_timing = true;
  const auto result = run_sweep(cfg);
  ASSERT_FALSE(result.records.empty());
  for (const auto& r : result.records) EXPECT_GE(r.wall_ms, 0.0);
}

TEST(Sweep, FixedEmptyDimensionIsSkipped) {
  SweepConfig cfg = small_config();
  cfg.n_values = {4};
  cfg.edge_prob = 0.0;
  cfg.k_policy = KPolicy::Fixed;
  cfg.fixed_k = 1;
  const auto result = run_sweep(cfg);
  EXPECT_TRUE(result.records.empty());
  EXPECT_EQ(result.skipped.size(), 3u);
}

TEST(Sweep, ValidatesConfig) {
  SweepConfig cfg = small_config();
  cfg.shot_grid = {0};
  EXPECT_THROW(run_sweep(cfg), ArgumentError);
  cfg = small_config();
  cfg.precision_grid.clear();
  EXPECT_THROW(run_sweep(cfg), ArgumentError);
  cfg = small_config();
  cfg.edge_prob = 2;
  EXPECT_THROW(run_sweep(cfg), ArgumentError);
}

TEST(Dimensions, Policies) {
  // Two filled triangles sharing an edge plus a pendant vertex: S_2 nonempty, S_3 empty.
  const auto c = build_complex(make_graph(5, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {3, 4}}), 4);
  SweepConfig cfg;
  cfg.k_policy = KPolicy::LargestWithCoface;
  EXPECT_EQ(select_dimensions(c, cfg), std::vector<int>{1});
  cfg.k_policy = KPolicy::AllNonempty;
  EXPECT_EQ(select_dimensions(c, cfg), (std::vector<int>{0, 1, 2}));
  cfg.k_policy = KPolicy::Fixed;
  cfg.fixed_k = 3;
  EXPECT_EQ(select_dimensions(c, cfg), std::vector<int>{3});
}

TEST(Dimensions, EdgelessFallsBackToZero) {
  const auto c = build_complex(make_graph(3, {}), 2);
  SweepConfig cfg;
  EXPECT_EQ(select_dimensions(c, cfg), std::vector<int>{0});
}

TEST(Seeds, ComplexSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (int n : {5, 10})
    for (int i = 0; i < 100; ++i) seen.insert(complex_seed(0, n, i));
  EXPECT_EQ(seen.size(), 200u);
}

TEST(Csv, SummaryHeader) {
  std::ostringstream os;
  write_summary_csv(os, {});
  EXPECT_EQ(os.str(), "n,shots,precision,min,q1,median,q3,max,mean,count\n");
}
