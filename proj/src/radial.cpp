#include "lpsym/radial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "lpsym/quadrature.hpp"

namespace lpsym {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double williamson_kernel(double x, double r, int d) {
  double base = 1.0 - x / r;
  if (base <= 0.0) return 0.0;
  return std::pow(base, d - 1);
}

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParameterError("cannot parse " + std::string(what) + " value '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

QuantileTable::QuantileTable(std::vector<double> u, std::vector<double> q)
    : u_(std::move(u)), q_(std::move(q)) {
  if (u_.size() != q_.size() || u_.size() < 2) {
    throw ParameterError("quantile table needs at least two (u, q) pairs of equal length");
  }
  for (std::size_t i = 0; i < u_.size(); ++i) {
    if (!(u_[i] >= 0.0 && u_[i] <= 1.0)) throw ParameterError("quantile table u must lie in [0,1]");
    if (!(q_[i] > 0.0) || !std::isfinite(q_[i])) {
      throw ParameterError("quantile table q must be positive and finite");
    }
    if (i > 0 && !(u_[i] > u_[i - 1] && q_[i] > q_[i - 1])) {
      throw ParameterError("quantile table must be strictly increasing in u and q");
    }
  }
}

QuantileTable QuantileTable::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open quantile table '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("quantile table is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "u,q") throw ParameterError("quantile table header must be 'u,q'");
  std::vector<double> u, q;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw ParameterError("quantile table row lacks a comma");
    std::string_view view(line);
    u.push_back(parse_double(view.substr(0, comma), "u"));
    q.push_back(parse_double(view.substr(comma + 1), "q"));
  }
  return QuantileTable(std::move(u), std::move(q));
}

double QuantileTable::quantile(double u) const {
  if (u <= u_.front()) return q_.front();
  if (u >= u_.back()) return q_.back();
  auto it = std::upper_bound(u_.begin(), u_.end(), u);
  std::size_t hi = static_cast<std::size_t>(it - u_.begin());
  std::size_t lo = hi - 1;
  double t = (u - u_[lo]) / (u_[hi] - u_[lo]);
  return q_[lo] + t * (q_[hi] - q_[lo]);
}

RadialLaw::RadialLaw(Dimension d, Variant law) : d_(d), law_(std::move(law)) {
  if (const auto* c = std::get_if<ClaytonRadial>(&law_)) {
    if (!std::isfinite(c->a) || c->a < d_.value() - 1) {
      throw ParameterError("Clayton radial law requires a >= d-1 (a=" + std::to_string(c->a) +
                           ", d=" + std::to_string(d_.value()) + ")");
    }
  }
}

double RadialLaw::sample(RngStream& rng) const {
  const int d = d_.value();
  return std::visit(
      overloaded{
          [](const UnitPointMass&) { return 1.0; },
          [&](const ClaytonRadial& c) {
            if (c.a == d - 1) return c.a;
            return c.a * rng.beta(d, c.a - d + 1);
          },
          [&](const ErlangRadial&) {
            double sum = 0.0;
            for (int i = 0; i < d; ++i) sum += rng.exponential();
            return sum;
          },
          [&](const QuantileTable& t) { return t.quantile(rng.uniform_open()); },
      },
      law_);
}

double RadialLaw::generator(double x) const {
  if (x < 0.0) throw ParameterError("generator argument must be >= 0");
  const int d = d_.value();
  return std::visit(
      overloaded{
          [&](const UnitPointMass&) { return williamson_kernel(x, 1.0, d); },
          [&](const ClaytonRadial& c) {
            double base = 1.0 - x / c.a;
            return base <= 0.0 ? 0.0 : std::pow(base, c.a);
          },
          [&](const ErlangRadial&) { return std::exp(-x); },
          [&](const QuantileTable& t) {
            const auto& us = t.u();
            const auto& qs = t.q();
            double total = us.front() * williamson_kernel(x, qs.front(), d);
            total += (1.0 - us.back()) * williamson_kernel(x, qs.back(), d);
            for (std::size_t i = 0; i + 1 < us.size(); ++i) {
              auto f = [&](double u) { return williamson_kernel(x, t.quantile(u), d); };
              double lo = us[i], hi = us[i + 1];
              if (qs[i + 1] <= x) continue;  // kernel vanishes on the whole segment
              if (qs[i] < x) {
                // split at the kink q(u) = x
                lo = us[i] + (x - qs[i]) / (qs[i + 1] - qs[i]) * (us[i + 1] - us[i]);
              }
              total += integrate(f, lo, hi);
            }
            return total;
          },
      },
      law_);
}

GeneratorFn RadialLaw::generator_fn() const {
  RadialLaw copy = *this;
  return GeneratorFn{[copy](double x) { return copy.generator(x); }, d_.value()};
}

RadialLaw parse_radial_spec(std::string_view spec, Dimension d) {
  if (spec == "unit") return RadialLaw::unit(d);
  if (spec == "erlang") return RadialLaw::erlang(d);
  if (spec.starts_with("clayton:")) {
    return RadialLaw::clayton(d, parse_double(spec.substr(8), "clayton parameter"));
  }
  if (spec.starts_with("table:")) {
    return RadialLaw(d, QuantileTable::from_csv(std::filesystem::path(spec.substr(6))));
  }
  throw ParameterError("unknown radial spec '" + std::string(spec) +
                       "' (expected unit, clayton:A, erlang or table:PATH)");
}

double sample_radial(const RadialLaw& law, RngStream& rng) { return law.sample(rng); }

double generator_value(const RadialLaw& law, double x) { return law.generator(x); }

double clayton_radial_cdf(double a, Dimension d, double x) {
  const int dim = d.value();
  if (!std::isfinite(a) || a < dim - 1) throw ParameterError("Clayton radial cdf requires a >= d-1");
  if (!(x >= 0.0 && x <= a)) throw ParameterError("Clayton radial cdf argument must lie in [0, a]");
  if (x >= a) return 1.0;
  const double s = x / a;
  double coeff = 1.0;  // a(a-1)...(a-k+1)/k!
  double sum = 0.0;
  for (int k = 0; k < dim; ++k) {
    if (k > 0) coeff *= (a - k + 1) / k;
    double term = coeff * std::pow(1.0 - s, a - k);
    if (k > 0) term *= std::pow(s, k);
    sum += term;
  }
  return std::clamp(1.0 - sum, 0.0, 1.0);
}

WilliamsonResidual williamson_residual(const RadialLaw& law, std::span<const double> x_grid,
                                       std::size_t n, RngStream& rng) {
  if (n < 2) throw ParameterError("williamson residual needs at least two draws");
  const int d = law.dimension().value();
  const std::size_t m = x_grid.size();
  // Welford running moments per grid point.
  std::vector<double> mean(m, 0.0), m2(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = law.sample(rng);
    for (std::size_t g = 0; g < m; ++g) {
      double v = williamson_kernel(x_grid[g], r, d);
      double delta = v - mean[g];
      mean[g] += delta / static_cast<double>(i + 1);
      m2[g] += delta * (v - mean[g]);
    }
  }
  WilliamsonResidual out;
  out.residual.resize(m);
  out.std_error.resize(m);
  for (std::size_t g = 0; g < m; ++g) {
    double res = std::abs(mean[g] - law.generator(x_grid[g]));
    double se = std::sqrt(m2[g] / static_cast<double>(n - 1) / static_cast<double>(n));
    out.residual[g] = res;
    out.std_error[g] = se;
    out.max_residual = std::max(out.max_residual, res);
    double z = res == 0.0 ? 0.0 : (se > 0.0 ? res / se : std::numeric_limits<double>::infinity());
    out.max_z = std::max(out.max_z, z);
  }
  return out;
}

}  // namespace lpsym
