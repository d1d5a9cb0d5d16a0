#pragma once

#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lpsym/params.hpp"

namespace lpsym {

/// Triangular array a[k][i], 1 <= i <= k <= d, of mixture weights.
///
/// Row k holds the weights of the beta components of the level-k law F_d^k;
/// row d therefore describes V_p, whose atom at one has mass a[d][1] = p^-(d-1).
class CoefficientTable {
 public:
  CoefficientTable(Dimension d, PowerParam p, std::vector<std::vector<double>> rows);

  Dimension dimension() const noexcept { return d_; }
  PowerParam power() const noexcept { return p_; }
  /// 1-based access, 1 <= i <= k <= d.
  double at(int k, int i) const;
  std::span<const double> row(int k) const;
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }

  /// {"d": ..., "p": ..., "rows": [[...], ...]}
  nlohmann::ordered_json to_json() const;

 private:
  Dimension d_;
  PowerParam p_;
  std::vector<std::vector<double>> rows_;
};

/// Runs the weight recursion with a_1^(1) = 1 and zero boundary values.
/// Values in [-1e-15, 0) produced by rounding are clamped to zero.
CoefficientTable coefficient_table(Dimension d, PowerParam p);

/// One beta law beta_{m,n}; n == 0 encodes the unit point mass at one.
struct BetaComponent {
  int m = 1;
  int n = 0;
  double weight = 0.0;

  bool is_point_mass() const noexcept { return n == 0; }
};

/// The law F_d^k as a finite weighted list of integer-shape beta laws.
class BetaMixture {
 public:
  BetaMixture(Dimension d, int level, std::vector<BetaComponent> components);

  Dimension dimension() const noexcept { return d_; }
  int level() const noexcept { return level_; }
  const std::vector<BetaComponent>& components() const noexcept { return components_; }
  /// Weight of the point mass at one (zero unless level == d).
  double atom_mass() const noexcept;

 private:
  Dimension d_;
  int level_;
  std::vector<BetaComponent> components_;
};

/// F_d^k = sum_i a[k][i] * beta_{k+1-i, d-k-1+i}.
BetaMixture mixture_for_level(const CoefficientTable& table, int k);

/// Closed-form beta_{m,n} cdf for integer shapes, via the finite binomial-type
/// sum evaluated term by term in log space. beta_{m,0} is the step 1{x >= 1}.
double beta_cdf(int m, int n, double x);

/// Density of beta_{m,n}, n >= 1.
double beta_density(int m, int n, double x);

double mixture_cdf(const BetaMixture& mix, double x);

/// Cdf of the absolutely continuous part, renormalized to total mass one.
/// Requires a mixture with atom mass < 1.
double mixture_continuous_cdf(const BetaMixture& mix, double x);

/// Generalized inverse inf{x : F(x) >= u} by bisection to 1e-12. Returns
/// exactly 1 when u exceeds the continuous mass.
double mixture_quantile(const BetaMixture& mix, double u);

/// Residuals of the two integer-shape beta identities
///   beta_{m+1,n-1} - beta_{m,n} = -C(m+n-1, m)   x^m (1-x)^(n-1)
///   beta_{m,n-1}   - beta_{m,n} = -C(m+n-2, m-1) x^m (1-x)^(n-1)
std::pair<double, double> beta_identity_residuals(int m, int n, double x);

}  // namespace lpsym
