#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpsym/maxid.hpp"
#include "lpsym/params.hpp"
#include "lpsym/radial.hpp"
#include "lpsym/rng.hpp"

namespace lpsym {

/// Asymptotic 1% critical value of the Kolmogorov distribution.
inline constexpr double kKsCritical1pct = 1.628;

struct KsResult {
  double statistic = 0.0;
  std::size_t n = 0;
  double critical_1pct = 0.0;
  bool pass = false;
};

/// Exact sup-distance between the empirical cdf of `sorted` and `cdf`,
/// evaluated on both sides of every distinct sample value so jumps of the
/// reference cdf (and ties) are handled. Left limits are taken as
/// cdf(nextafter(x, -inf)). Requires n >= 100 and ascending input.
KsResult ks_one_sample(std::span<const double> sorted, const std::function<double(double)>& cdf);

/// Two-sample statistic; critical value 1.628 * sqrt((n + m) / (n m)).
KsResult ks_two_sample(std::span<const double> a_sorted, std::span<const double> b_sorted);

/// (count/n - prob) in units of sqrt(prob (1 - prob) / n). For prob in {0, 1}
/// the result is 0 on exact agreement and infinite otherwise.
double binomial_z(std::size_t count, std::size_t n, double prob);

/// Kendall's tau-a by exact O(n^2) concordance counting.
double kendall_tau_estimate(std::span<const double> x, std::span<const double> y);

/// Max residual of E[(1 - x/V_p^p)_+^(d-1)] = (1 - x^theta)_+^(d-1) over the
/// grid, the left side as atom term plus adaptive quadrature against the
/// continuous mixture density.
double check_williamson_vp(Dimension d, PowerParam p, std::span<const double> x_grid);

/// Max residual of int_{c^theta}^1 (1 - c/x^p)^(k-1) dF_d^k(x) = (1 - c^theta)^(d-1).
double check_recur1(Dimension d, PowerParam p, int k, std::span<const double> c_grid);

/// Exact positive stable draw with Laplace transform exp(-s^alpha), 0 < alpha <= 1
/// (Kanter's representation).
double sample_positive_stable(double alpha, RngStream& rng);

/// Two-sample KS between the first coordinates of M^-theta xi^theta and
/// E V_p (xi/||xi||_1)^theta, E ~ Erlang(d).
KsResult check_stable_identity(Dimension d, PowerParam p, std::size_t n, const RngStream& rng,
                               unsigned threads = 1);

struct VpLawResult {
  std::size_t n = 0;
  std::size_t atoms = 0;
  double atom_expected = 0.0;
  double atom_z = 0.0;
  /// KS of the non-atom sub-sample; n == 0 when there is no continuous part.
  KsResult continuous_ks;
};

VpLawResult check_vp_law(Dimension d, PowerParam p, std::size_t n, const RngStream& rng,
                         unsigned threads = 1);

/// Largest |z| of the empirical P(Z > z) against phi(||z||_p) over the points.
double check_survival_frequencies(Dimension d, PowerParam p, const RadialLaw& radial,
                                  const std::vector<std::vector<double>>& points, std::size_t n,
                                  const RngStream& rng, unsigned threads = 1);

struct MaxIdCdfResult {
  double max_z = 0.0;
  double mean_points = 0.0;
  std::size_t max_points = 0;
};

/// Empirical P(Y <= y) against maxid_cdf on the product grid axis^d.
MaxIdCdfResult check_maxid_cdf(Dimension d, PowerParam p, const RadialRadonMeasure& nu,
                               std::span<const double> axis, std::size_t n, const RngStream& rng,
                               unsigned threads = 1);

struct CheckResult {
  std::string name;
  nlohmann::ordered_json params;
  double metric = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double seconds = 0.0;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::uint64_t seed = 0;

  bool pass() const;
  nlohmann::ordered_json to_json() const;
};

struct SuiteConfig {
  bool quick = false;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Runs every module invariant and aggregates the results. Each check draws
/// from its own stream derived from the master seed and the check name.
VerificationReport run_suite(const SuiteConfig& config);

/// Evenly spaced grid of `count` points on [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace lpsym
