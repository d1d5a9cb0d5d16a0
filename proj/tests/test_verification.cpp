#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "lpsym/error.hpp"
#include "lpsym/verification.hpp"

using namespace lpsym;

namespace {

std::vector<double> sorted_uniforms(std::size_t n, double scale, std::uint64_t seed) {
  RngStream rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = scale * rng.uniform();
  std::sort(x.begin(), x.end());
  return x;
}

double uniform_cdf(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

TEST(KsOneSample, AcceptsOwnLawRejectsGrossMismatch) {
  auto x = sorted_uniforms(20000, 1.0, 71);
  auto ok = ks_one_sample(x, uniform_cdf);
  EXPECT_TRUE(ok.pass);
  EXPECT_NEAR(ok.critical_1pct, 1.628 / std::sqrt(20000.0), 1e-15);
  auto bad = ks_one_sample(x, [](double t) { return std::clamp(2.0 * t, 0.0, 1.0); });
  EXPECT_GE(bad.statistic, 0.5 - 0.02);
  EXPECT_FALSE(bad.pass);
}

TEST(KsOneSample, HandlesAtomsExactly) {
  // Half the mass at one, the rest uniform; sample that law exactly on a lattice.
  std::vector<double> x;
  for (int i = 0; i < 500; ++i) x.push_back((i + 0.5) / 500.0);
  for (int i = 0; i < 500; ++i) x.push_back(1.0);
  auto cdf = [](double t) { return t >= 1.0 ? 1.0 : 0.5 * std::clamp(t, 0.0, 1.0); };
  auto r = ks_one_sample(x, cdf);
  EXPECT_LE(r.statistic, 1.0 / 1000.0 + 1e-12);
  // Without the atom the same data is far off.
  auto r2 = ks_one_sample(x, uniform_cdf);
  EXPECT_GE(r2.statistic, 0.49);
}

TEST(KsOneSample, PreconditionErrors) {
  std::vector<double> few(99, 0.5);
  EXPECT_THROW(ks_one_sample(few, uniform_cdf), ParameterError);
  auto x = sorted_uniforms(200, 1.0, 72);
  std::swap(x[3], x[150]);
  EXPECT_THROW(ks_one_sample(x, uniform_cdf), ParameterError);
}

TEST(KsTwoSample, SameAndDifferentLaws) {
  auto a = sorted_uniforms(20000, 1.0, 73);
  auto b = sorted_uniforms(30000, 1.0, 74);
  auto same = ks_two_sample(a, b);
  EXPECT_TRUE(same.pass);
  EXPECT_NEAR(same.critical_1pct, 1.628 * std::sqrt(50000.0 / (20000.0 * 30000.0)), 1e-15);
  auto c = sorted_uniforms(30000, 0.9, 75);
  auto diff = ks_two_sample(a, c);
  EXPECT_FALSE(diff.pass);
  EXPECT_NEAR(diff.statistic, 0.1, 0.02);
}

TEST(BinomialZ, Values) {
  EXPECT_NEAR(binomial_z(60, 100, 0.5), 2.0, 1e-12);
  EXPECT_EQ(binomial_z(0, 100, 0.0), 0.0);
  EXPECT_TRUE(std::isinf(binomial_z(1, 100, 0.0)));
  EXPECT_EQ(binomial_z(100, 100, 1.0), 0.0);
}

TEST(KendallTau, SimpleCases) {
  std::vector<double> x = {1, 2, 3, 4, 5};
  std::vector<double> up = {2, 4, 6, 8, 10};
  std::vector<double> down = {5, 4, 3, 2, 1};
  std::vector<double> mixed = {1, 3, 2, 5, 4};
  EXPECT_DOUBLE_EQ(kendall_tau_estimate(x, up), 1.0);
  EXPECT_DOUBLE_EQ(kendall_tau_estimate(x, down), -1.0);
  EXPECT_DOUBLE_EQ(kendall_tau_estimate(x, mixed), 0.6);
}

TEST(AnalyticChecks, WilliamsonHandValue) {
  // left = 0.5 (1 - 0.25) + 0.5 [v + 0.25/v]_{0.5}^{1} = 0.5 = right
  const double x[] = {0.25};
  EXPECT_LE(check_williamson_vp(Dimension(2), PowerParam(2.0), x), 1e-12);
  const double ends[] = {0.0, 1.0};
  EXPECT_LE(check_williamson_vp(Dimension(4), PowerParam(3.0), ends), 1e-14);
}

TEST(AnalyticChecks, RecurLevelOneAndEndpoints) {
  auto grid = linspace(0.0, 1.0, 50);
  for (int d = 2; d <= 8; ++d) {
    EXPECT_LE(check_recur1(Dimension(d), PowerParam(2.0), 1, grid), 1e-10);
    const double ends[] = {0.0, 1.0};
    for (int k = 1; k <= d; ++k) EXPECT_LE(check_recur1(Dimension(d), PowerParam(1.5), k, ends), 1e-12);
  }
}

TEST(AnalyticChecks, FullLevelAndArgumentValidation) {
  auto grid = linspace(0.0, 1.0, 50);
  const double good = check_recur1(Dimension(4), PowerParam(2.0), 4, grid);
  EXPECT_LE(good, 1e-8);
  EXPECT_THROW(check_recur1(Dimension(4), PowerParam(2.0), 5, grid), ParameterError);
  const double bad_grid[] = {1.5};
  EXPECT_THROW(check_williamson_vp(Dimension(4), PowerParam(2.0), bad_grid), ParameterError);
}

TEST(PositiveStable, LaplaceTransform) {
  RngStream rng(76);
  const int n = 200000;
  for (double alpha : {0.25, 0.5, 0.8}) {
    for (double s : {0.5, 1.0, 2.0}) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += std::exp(-s * sample_positive_stable(alpha, rng));
      EXPECT_NEAR(acc / n, std::exp(-std::pow(s, alpha)), 5.0 * 0.5 / std::sqrt(n))
          << "alpha=" << alpha << " s=" << s;
    }
  }
  EXPECT_EQ(sample_positive_stable(1.0, rng), 1.0);
  EXPECT_THROW(sample_positive_stable(0.0, rng), ParameterError);
  EXPECT_THROW(sample_positive_stable(1.2, rng), ParameterError);
}

TEST(StableIdentity, PowerOneAndErrors) {
  auto r = check_stable_identity(Dimension(3), PowerParam(1.0), 20000, RngStream(77));
  EXPECT_TRUE(r.pass) << r.statistic;
  EXPECT_THROW(check_stable_identity(Dimension(3), PowerParam(2.0), 9999, RngStream(77)), ParameterError);
}

TEST(VpLaw, ReportsAtomAndContinuousParts) {
  auto r = check_vp_law(Dimension(3), PowerParam(2.0), 100000, RngStream(78), 4);
  EXPECT_EQ(r.n, 100000u);
  EXPECT_DOUBLE_EQ(r.atom_expected, 0.25);
  EXPECT_LE(std::abs(r.atom_z), 4.0);
  EXPECT_TRUE(r.continuous_ks.pass);
  auto unit = check_vp_law(Dimension(3), PowerParam(1.0), 1000, RngStream(78));
  EXPECT_EQ(unit.atoms, 1000u);
  EXPECT_EQ(unit.continuous_ks.n, 0u);
}

TEST(Suite, QuickRunIsDeterministicAndSerializesInOrder) {
  SuiteConfig cfg;
  cfg.quick = true;
  cfg.seed = 12345;
  cfg.threads = 4;
  auto a = run_suite(cfg);
  cfg.threads = 1;
  auto b = run_suite(cfg);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  ASSERT_GT(a.checks.size(), 20u);
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    EXPECT_EQ(a.checks[i].name, b.checks[i].name);
    EXPECT_EQ(a.checks[i].metric, b.checks[i].metric) << a.checks[i].name;
    EXPECT_EQ(a.checks[i].params, b.checks[i].params);
  }
  EXPECT_TRUE(a.pass());

  auto j = a.to_json();
  std::vector<std::string> top;
  for (auto it = j.begin(); it != j.end(); ++it) top.push_back(it.key());
  EXPECT_EQ(top, (std::vector<std::string>{"checks", "pass", "seed"}));
  std::vector<std::string> keys;
  const auto& first = j["checks"][0];
  for (auto it = first.begin(); it != first.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"name", "params", "metric", "tolerance", "pass", "seconds"}));
  EXPECT_EQ(j["seed"].get<std::uint64_t>(), 12345u);
}

TEST(Linspace, Endpoints) {
  auto g = linspace(0.0, 1.0, 5);
  EXPECT_EQ(g, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  EXPECT_EQ(linspace(2.0, 3.0, 1), (std::vector<double>{2.0}));
}

namespace {

struct Calibration {
  int rejections = 0;
  double mean_ratio = 0.0;
};

template <class Run>
Calibration calibrate(int reps, Run run) {
  Calibration c;
  for (int r = 0; r < reps; ++r) {
    const KsResult k = run(static_cast<std::uint64_t>(r));
    c.rejections += k.pass ? 0 : 1;
    c.mean_ratio += k.statistic / k.critical_1pct / reps;
  }
  return c;
}

// Under a correct law the KS statistic follows the Kolmogorov distribution,
// whose mean 0.8687 is 0.534 critical values. Over 200 replications the
// standard error of the mean ratio is about 0.011 and the rejection count is
// Binomial(200, 0.01); at most 8 keeps the false-alarm rate near 2e-4.
constexpr double kMeanRatioBound = 0.534 + 4 * 0.011;

}  // namespace

TEST(Calibration, VpContinuousKsRejectsAtNominalRate) {
  for (auto [d, p] : {std::pair{3, 1.5}, std::pair{3, 4.0}, std::pair{5, 2.0}}) {
    auto c = calibrate(200, [&](std::uint64_t r) {
      return check_vp_law(Dimension(d), PowerParam(p), 20000, RngStream(9000 + r, d), 4).continuous_ks;
    });
    EXPECT_LE(c.rejections, 8) << "d=" << d << " p=" << p;
    EXPECT_LE(c.mean_ratio, kMeanRatioBound) << "d=" << d << " p=" << p;
  }
}

TEST(Calibration, StableIdentityRejectsAtNominalRate) {
  for (auto [d, p] : {std::pair{3, 2.0}, std::pair{2, 4.0}}) {
    auto c = calibrate(200, [&](std::uint64_t r) {
      return check_stable_identity(Dimension(d), PowerParam(p), 10000, RngStream(9500 + r, d), 4);
    });
    EXPECT_LE(c.rejections, 8) << "d=" << d << " p=" << p;
    EXPECT_LE(c.mean_ratio, kMeanRatioBound) << "d=" << d << " p=" << p;
  }
}
