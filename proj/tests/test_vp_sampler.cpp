#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "lpsym/error.hpp"
#include "lpsym/mixture.hpp"
#include "lpsym/verification.hpp"
#include "lpsym/vp_sampler.hpp"

using namespace lpsym;

TEST(VpSampler, UnitPowerAlwaysOne) {
  RngStream rng(1);
  for (int d : {2, 3, 7, 20}) {
    VpSampler s(Dimension(d), PowerParam(1.0));
    for (int i = 0; i < 2000; ++i) {
      auto v = s.sample(rng);
      ASSERT_EQ(v.value, 1.0);
      ASSERT_TRUE(v.is_atom);
    }
  }
}

TEST(VpSampler, ValuesInUnitIntervalAndAtomFlagConsistent) {
  RngStream rng(2);
  VpSampler s(Dimension(4), PowerParam(1.7));
  for (int i = 0; i < 20000; ++i) {
    auto v = s.sample(rng);
    ASSERT_GT(v.value, 0.0);
    ASSERT_LE(v.value, 1.0);
    ASSERT_EQ(v.is_atom, v.value == 1.0);
  }
}

TEST(VpSampler, AtomFrequencyD2AndD3) {
  const std::size_t n = 100000;
  for (auto [d, expected] : {std::pair{2, 0.5}, std::pair{3, 0.25}}) {
    auto draws = sample_vp_batch(Dimension(d), PowerParam(2.0), n, RngStream(11, d));
    const auto atoms = static_cast<std::size_t>(
        std::count_if(draws.begin(), draws.end(), [](const VpSample& v) { return v.is_atom; }));
    EXPECT_LE(std::abs(binomial_z(atoms, n, expected)), 4.0) << "d=" << d;
  }
}

TEST(VpSampler, D2ContinuousPartIsUniform) {
  auto draws = sample_vp_batch(Dimension(2), PowerParam(2.0), 100000, RngStream(12));
  std::vector<double> cont;
  for (auto& v : draws)
    if (!v.is_atom) cont.push_back(v.value);
  std::sort(cont.begin(), cont.end());
  auto ks = ks_one_sample(cont, [](double x) { return std::clamp(x, 0.0, 1.0); });
  EXPECT_TRUE(ks.pass) << ks.statistic << " vs " << ks.critical_1pct;
}

TEST(VpSampler, LevelOneIsMinimumOfUniforms) {
  const int d = 5;
  VpSampler s(Dimension(d), PowerParam(2.0));
  RngStream rng(13);
  std::vector<double> x(50000);
  for (auto& v : x) v = s.sample_level(1, rng);
  std::sort(x.begin(), x.end());
  auto ks = ks_one_sample(x, [&](double t) { return 1.0 - std::pow(1.0 - std::clamp(t, 0.0, 1.0), d - 1); });
  EXPECT_TRUE(ks.pass) << ks.statistic;
}

TEST(VpSampler, IntermediateLevelMatchesMixture) {
  const Dimension d(4);
  const PowerParam p(2.0);
  auto mix = mixture_for_level(coefficient_table(d, p), 2);
  VpSampler s(d, p);
  RngStream rng(14);
  std::vector<double> x(100000);
  for (auto& v : x) v = s.sample_level(2, rng);
  std::sort(x.begin(), x.end());
  auto ks = ks_one_sample(x, [&](double t) { return mixture_cdf(mix, t); });
  EXPECT_TRUE(ks.pass) << ks.statistic << " vs " << ks.critical_1pct;
}

TEST(VpSampler, TopLevelEqualsSample) {
  const Dimension d(3);
  const PowerParam p(1.5);
  VpSampler a(d, p), b(d, p);
  RngStream ra(15), rb(15);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.sample(ra).value, b.sample_level(3, rb));
}

TEST(VpSampler, PowerOfVpIsNotTheLaw) {
  // The mixture describes V_p itself; V_p^p has a visibly different law.
  const Dimension d(3);
  const PowerParam p(2.0);
  auto mix = mixture_for_level(coefficient_table(d, p), 3);
  auto draws = sample_vp_batch(d, p, 100000, RngStream(16));
  std::vector<double> pw;
  for (auto& v : draws)
    if (!v.is_atom) pw.push_back(v.value * v.value);
  std::sort(pw.begin(), pw.end());
  auto ks = ks_one_sample(pw, [&](double t) { return mixture_continuous_cdf(mix, t); });
  EXPECT_FALSE(ks.pass);
}

TEST(VpSampler, BatchDeterministicAcrossThreads) {
  const Dimension d(5);
  const PowerParam p(1.5);
  auto a = sample_vp_batch(d, p, 7000, RngStream(17, 2), 1);
  auto b = sample_vp_batch(d, p, 7000, RngStream(17, 2), 1);
  auto c = sample_vp_batch(d, p, 7000, RngStream(17, 2), 6);
  ASSERT_EQ(a.size(), 7000u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].value, b[i].value);
    ASSERT_EQ(a[i].value, c[i].value);
  }
}

TEST(VpSampler, Errors) {
  EXPECT_THROW(sample_vp_batch(Dimension(3), PowerParam(2.0), 0, RngStream(1)), ParameterError);
  RngStream rng(1);
  EXPECT_THROW(sample_vp_level(Dimension(3), PowerParam(2.0), 0, rng), ParameterError);
  EXPECT_THROW(sample_vp_level(Dimension(3), PowerParam(2.0), 4, rng), ParameterError);
}
