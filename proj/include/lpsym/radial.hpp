#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "lpsym/params.hpp"
#include "lpsym/rng.hpp"

namespace lpsym {

/// A one-variable generator x -> phi(x) claimed d-monotone for `order` = d.
struct GeneratorFn {
  std::function<double(double)> phi;
  int order = 2;

  double operator()(double x) const { return phi(x); }
};

/// R == 1; generator (1-x)_+^(d-1).
struct UnitPointMass {};

/// R/a ~ Beta(d, a-d+1); generator (1-x/a)_+^a. a == d-1 is the point mass at a.
struct ClaytonRadial {
  double a = 1.0;
};

/// R ~ Erlang(d); generator exp(-x).
struct ErlangRadial {};

/// R = q(U) with q piecewise linear through the supplied knots. Below the
/// first knot q is clamped to the first value, above the last knot to the last.
class QuantileTable {
 public:
  QuantileTable(std::vector<double> u, std::vector<double> q);

  /// Reads a CSV file with header "u,q".
  static QuantileTable from_csv(const std::filesystem::path& path);

  double quantile(double u) const;
  const std::vector<double>& u() const noexcept { return u_; }
  const std::vector<double>& q() const noexcept { return q_; }

 private:
  std::vector<double> u_;
  std::vector<double> q_;
};

/// A positive radial law R together with its Williamson d-transform.
class RadialLaw {
 public:
  using Variant = std::variant<UnitPointMass, ClaytonRadial, ErlangRadial, QuantileTable>;

  RadialLaw(Dimension d, Variant law);

  static RadialLaw unit(Dimension d) { return {d, UnitPointMass{}}; }
  static RadialLaw clayton(Dimension d, double a) { return {d, ClaytonRadial{a}}; }
  static RadialLaw erlang(Dimension d) { return {d, ErlangRadial{}}; }

  Dimension dimension() const noexcept { return d_; }
  const Variant& law() const noexcept { return law_; }

  double sample(RngStream& rng) const;
  /// phi(x) = E[(1 - x/R)_+^(d-1)]. Closed form for the built-in families;
  /// for quantile tables, adaptive quadrature over u with tolerance 1e-10.
  double generator(double x) const;
  GeneratorFn generator_fn() const;

 private:
  Dimension d_;
  Variant law_;
};

/// Parses "unit", "clayton:A", "erlang" or "table:PATH".
RadialLaw parse_radial_spec(std::string_view spec, Dimension d);

double sample_radial(const RadialLaw& law, RngStream& rng);
double generator_value(const RadialLaw& law, double x);

/// P(R <= x) for the Clayton radial law, 0 <= x <= a.
double clayton_radial_cdf(double a, Dimension d, double x);

struct WilliamsonResidual {
  double max_residual = 0.0;
  /// Largest residual in units of its Monte Carlo standard error.
  double max_z = 0.0;
  std::vector<double> residual;
  std::vector<double> std_error;
};

/// Compares the Monte Carlo mean of (1 - x/R)_+^(d-1) over n draws with the
/// generator at every grid point.
WilliamsonResidual williamson_residual(const RadialLaw& law, std::span<const double> x_grid,
                                       std::size_t n, RngStream& rng);

}  // namespace lpsym
