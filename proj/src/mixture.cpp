#include "lpsym/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lpsym {

namespace {

constexpr double kClampFloor = -1e-15;
constexpr double kWeightSumTol = 1e-12;

void require_shapes(int m, int n) {
  if (m < 1 || n < 0) {
    throw ParameterError("beta shapes must satisfy m >= 1, n >= 0 (got m=" + std::to_string(m) +
                         ", n=" + std::to_string(n) + ")");
  }
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

}  // namespace

CoefficientTable::CoefficientTable(Dimension d, PowerParam p, std::vector<std::vector<double>> rows)
    : d_(d), p_(p), rows_(std::move(rows)) {
  if (static_cast<int>(rows_.size()) != d_.value()) {
    throw ParameterError("coefficient table needs exactly d rows");
  }
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (rows_[k].size() != k + 1) throw ParameterError("coefficient table row k must have k entries");
  }
}

double CoefficientTable::at(int k, int i) const {
  if (k < 1 || k > d_.value() || i < 1 || i > k) {
    throw ParameterError("coefficient index out of range");
  }
  return rows_[k - 1][i - 1];
}

std::span<const double> CoefficientTable::row(int k) const {
  if (k < 1 || k > d_.value()) throw ParameterError("level k out of range");
  return rows_[k - 1];
}

nlohmann::ordered_json CoefficientTable::to_json() const {
  nlohmann::ordered_json j;
  j["d"] = d_.value();
  j["p"] = p_.p();
  j["rows"] = rows_;
  return j;
}

CoefficientTable coefficient_table(Dimension d, PowerParam p) {
  const int dim = d.value();
  const double theta = p.theta();
  std::vector<std::vector<double>> rows(dim);
  rows[0] = {1.0};
  for (int k = 2; k <= dim; ++k) {
    const auto& prev = rows[k - 2];
    auto& cur = rows[k - 1];
    cur.assign(k, 0.0);
    // prev is 1-based in the recursion: prev_i = prev[i-1], with prev_0 = prev_k = 0.
    for (int i = 1; i <= k; ++i) {
      double stay = (i <= k - 1) ? prev[i - 1] * theta * (k - i) / (k - 1) : 0.0;
      double move = (i >= 2) ? prev[i - 2] * (1.0 - theta * (k - i + 1) / (k - 1)) : 0.0;
      double a = stay + move;
      if (a < 0.0 && a >= kClampFloor) a = 0.0;
      cur[i - 1] = a;
    }
  }
  return CoefficientTable(d, p, std::move(rows));
}

BetaMixture::BetaMixture(Dimension d, int level, std::vector<BetaComponent> components)
    : d_(d), level_(level), components_(std::move(components)) {
  const int dim = d_.value();
  if (level_ < 1 || level_ > dim) throw ParameterError("mixture level out of range");
  if (static_cast<int>(components_.size()) != level_) {
    throw ParameterError("level-k mixture must have k components");
  }
  double total = 0.0;
  for (int i = 1; i <= level_; ++i) {
    const auto& c = components_[i - 1];
    if (c.m != level_ + 1 - i || c.n != dim - level_ - 1 + i) {
      throw ParameterError("mixture component shapes do not match level");
    }
    if (c.weight < 0.0 || c.weight > 1.0) throw ParameterError("mixture weight outside [0,1]");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > kWeightSumTol) throw ParameterError("mixture weights must sum to 1");
}

double BetaMixture::atom_mass() const noexcept {
  double mass = 0.0;
  for (const auto& c : components_) {
    if (c.is_point_mass()) mass += c.weight;
  }
  return mass;
}

BetaMixture mixture_for_level(const CoefficientTable& table, int k) {
  const int dim = table.dimension().value();
  if (k < 1 || k > dim) {
    throw ParameterError("level k must lie in [1, d], got " + std::to_string(k));
  }
  std::vector<BetaComponent> comps;
  comps.reserve(k);
  for (int i = 1; i <= k; ++i) {
    comps.push_back({k + 1 - i, dim - k - 1 + i, table.at(k, i)});
  }
  return BetaMixture(table.dimension(), k, std::move(comps));
}

double beta_cdf(int m, int n, double x) {
  require_shapes(m, n);
  if (n == 0) return x >= 1.0 ? 1.0 : 0.0;
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_x = std::log(x);
  const double log_1mx = std::log1p(-x);
  const double log_norm = std::lgamma(static_cast<double>(m + n));
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    double log_term = log_norm - std::lgamma(static_cast<double>(m + j + 1)) -
                      std::lgamma(static_cast<double>(n - j)) + (m + j) * log_x +
                      (n - 1 - j) * log_1mx;
    sum += std::exp(log_term);
  }
  return std::clamp(sum, 0.0, 1.0);
}

double beta_density(int m, int n, double x) {
  require_shapes(m, n);
  if (n == 0) throw ParameterError("point mass has no density");
  if (x < 0.0 || x > 1.0) return 0.0;
  // Integer shapes: 1 / B(m, n) = (m+n-1)! / ((m-1)! (n-1)!).
  const double log_norm = std::lgamma(static_cast<double>(m + n)) -
                          std::lgamma(static_cast<double>(m)) - std::lgamma(static_cast<double>(n));
  double val = std::exp(log_norm);
  if (m > 1) val *= std::pow(x, m - 1);
  if (n > 1) val *= std::pow(1.0 - x, n - 1);
  return val;
}

double mixture_cdf(const BetaMixture& mix, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double sum = 0.0;
  for (const auto& c : mix.components()) {
    if (c.weight != 0.0) sum += c.weight * beta_cdf(c.m, c.n, x);
  }
  return std::clamp(sum, 0.0, 1.0);
}

double mixture_continuous_cdf(const BetaMixture& mix, double x) {
  const double continuous = 1.0 - mix.atom_mass();
  if (!(continuous > 0.0)) throw ParameterError("mixture has no continuous part");
  if (x >= 1.0) return 1.0;
  return std::clamp(mixture_cdf(mix, x) / continuous, 0.0, 1.0);
}

double mixture_quantile(const BetaMixture& mix, double u) {
  if (!(u > 0.0 && u < 1.0)) throw ParameterError("quantile level must lie in (0,1)");
  if (u > 1.0 - mix.atom_mass()) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    if (mixture_cdf(mix, mid) >= u) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::pair<double, double> beta_identity_residuals(int m, int n, double x) {
  if (m < 1 || n < 1) throw ParameterError("identity shapes must satisfy m, n >= 1");
  if (!(x > 0.0 && x < 1.0)) throw ParameterError("identity argument must lie in (0,1)");
  const double kernel = std::pow(x, m) * std::pow(1.0 - x, n - 1);
  const double base = beta_cdf(m, n, x);
  double first = beta_cdf(m + 1, n - 1, x) - base + binomial(m + n - 1, m) * kernel;
  double second = beta_cdf(m, n - 1, x) - base + binomial(m + n - 2, m - 1) * kernel;
  return {std::abs(first), std::abs(second)};
}

}  // namespace lpsym
