#include "lpsym/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <string_view>

#include "lpsym/batch.hpp"
#include "lpsym/mixture.hpp"
#include "lpsym/quadrature.hpp"
#include "lpsym/survival.hpp"
#include "lpsym/vp_sampler.hpp"

namespace lpsym {

namespace {

using Json = nlohmann::ordered_json;

double kernel_power(double base, int exponent) {
  if (exponent == 0) return 1.0;
  if (base <= 0.0) return 0.0;
  return std::pow(base, exponent);
}

// int_{c^theta}^1 (1 - c/x^p)^e dF(x) for a beta mixture F: atom part in
// closed form, continuous part by adaptive quadrature.
double mixture_williamson_integral(const BetaMixture& mix, PowerParam p, double c, int exponent) {
  const double lower = std::pow(c, p.theta());
  double total = 0.0;
  for (const auto& comp : mix.components()) {
    if (comp.is_point_mass()) total += comp.weight * kernel_power(1.0 - c, exponent);
  }
  if (lower >= 1.0) return total;
  auto integrand = [&](double x) {
    double density = 0.0;
    for (const auto& comp : mix.components()) {
      if (!comp.is_point_mass() && comp.weight != 0.0) {
        density += comp.weight * beta_density(comp.m, comp.n, x);
      }
    }
    const double xp = p.p() == 1.0 ? x : std::pow(x, p.p());
    return kernel_power(1.0 - c / xp, exponent) * density;
  };
  return total + integrate(integrand, lower, 1.0, 1e-10);
}

double recur1_residual(const CoefficientTable& table, int k, std::span<const double> grid) {
  const auto mix = mixture_for_level(table, k);
  const PowerParam p = table.power();
  const int d = table.dimension().value();
  double worst = 0.0;
  for (double c : grid) {
    if (c < 0.0 || c > 1.0) throw ParameterError("grid points must lie in [0,1]");
    const double lhs = mixture_williamson_integral(mix, p, c, k - 1);
    const double rhs = kernel_power(1.0 - std::pow(c, p.theta()), d - 1);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

std::uint64_t name_hash(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fmt_num(double v) {
  std::string s = std::to_string(v);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.back() = hi;
  return out;
}

KsResult ks_one_sample(std::span<const double> sorted, const std::function<double(double)>& cdf) {
  const std::size_t n = sorted.size();
  if (n < 100) throw ParameterError("one-sample KS needs at least 100 samples");
  if (!std::is_sorted(sorted.begin(), sorted.end())) {
    throw ParameterError("one-sample KS input must be sorted ascending");
  }
  const double nd = static_cast<double>(n);
  double stat = 0.0;
  std::size_t before = 0;
  std::size_t i = 0;
  while (i < n) {
    const double v = sorted[i];
    std::size_t j = i;
    while (j < n && sorted[j] == v) ++j;
    const double left = cdf(std::nextafter(v, -std::numeric_limits<double>::infinity()));
    const double right = cdf(v);
    stat = std::max(stat, std::abs(left - static_cast<double>(before) / nd));
    stat = std::max(stat, std::abs(static_cast<double>(j) / nd - right));
    before = j;
    i = j;
  }
  KsResult r;
  r.statistic = stat;
  r.n = n;
  r.critical_1pct = kKsCritical1pct / std::sqrt(nd);
  r.pass = stat < r.critical_1pct;
  return r;
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ParameterError("two-sample KS needs non-empty samples");
  if (!std::is_sorted(a.begin(), a.end()) || !std::is_sorted(b.begin(), b.end())) {
    throw ParameterError("two-sample KS inputs must be sorted ascending");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double stat = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    stat = std::max(stat, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult r;
  r.statistic = stat;
  r.n = std::min(a.size(), b.size());
  r.critical_1pct = kKsCritical1pct * std::sqrt((na + nb) / (na * nb));
  r.pass = stat < r.critical_1pct;
  return r;
}

double binomial_z(std::size_t count, std::size_t n, double prob) {
  if (n == 0) throw ParameterError("binomial z needs n >= 1");
  const double freq = static_cast<double>(count) / static_cast<double>(n);
  const double var = prob * (1.0 - prob);
  if (var <= 0.0) return freq == prob ? 0.0 : std::numeric_limits<double>::infinity();
  return (freq - prob) / std::sqrt(var / static_cast<double>(n));
}

double kendall_tau_estimate(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("Kendall tau needs paired samples");
  const std::size_t n = x.size();
  long long score = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = (x[i] - x[j]) * (y[i] - y[j]);
      score += (s > 0.0) - (s < 0.0);
    }
  }
  return static_cast<double>(score) / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

double check_williamson_vp(Dimension d, PowerParam p, std::span<const double> x_grid) {
  const auto table = coefficient_table(d, p);
  return recur1_residual(table, d.value(), x_grid);
}

double check_recur1(Dimension d, PowerParam p, int k, std::span<const double> c_grid) {
  const auto table = coefficient_table(d, p);
  return recur1_residual(table, k, c_grid);
}

double sample_positive_stable(double alpha, RngStream& rng) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ParameterError("stable index must lie in (0, 1]");
  if (alpha == 1.0) return 1.0;
  const double u = std::numbers::pi * rng.uniform_open();
  const double e = rng.exponential();
  const double a = std::sin(alpha * u) / std::pow(std::sin(u), 1.0 / alpha);
  const double b = std::pow(std::sin((1.0 - alpha) * u) / e, (1.0 - alpha) / alpha);
  return a * b;
}

KsResult check_stable_identity(Dimension d, PowerParam p, std::size_t n, const RngStream& rng,
                               unsigned threads) {
  if (n < 10'000) throw ParameterError("stable identity check needs n >= 10^4");
  const double theta = p.theta();
  std::vector<double> stable(n), mixture(n);
  for_each_chunk(n, rng.substream(0), threads, [&](RngStream& r, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const double m = sample_positive_stable(theta, r);
      const double xi = r.exponential();
      stable[i] = std::pow(m, -theta) * std::pow(xi, theta);
    }
  });
  const auto erlang = RadialLaw::erlang(d);
  const auto batch = sample_survival_batch(d, p, erlang, n, rng.substream(1), threads);
  mixture = batch.column(0);
  std::sort(stable.begin(), stable.end());
  std::sort(mixture.begin(), mixture.end());
  return ks_two_sample(stable, mixture);
}

VpLawResult check_vp_law(Dimension d, PowerParam p, std::size_t n, const RngStream& rng,
                         unsigned threads) {
  const auto table = coefficient_table(d, p);
  const auto mix = mixture_for_level(table, d.value());
  const auto draws = sample_vp_batch(d, p, n, rng, threads);
  VpLawResult r;
  r.n = n;
  r.atom_expected = mix.atom_mass();
  std::vector<double> continuous;
  continuous.reserve(n);
  for (const auto& s : draws) {
    if (s.is_atom) {
      ++r.atoms;
    } else {
      continuous.push_back(s.value);
    }
  }
  r.atom_z = binomial_z(r.atoms, n, r.atom_expected);
  if (mix.atom_mass() < 1.0) {
    std::sort(continuous.begin(), continuous.end());
    r.continuous_ks =
        ks_one_sample(continuous, [&](double x) { return mixture_continuous_cdf(mix, x); });
  } else {
    r.continuous_ks.pass = continuous.empty();
  }
  return r;
}

double check_survival_frequencies(Dimension d, PowerParam p, const RadialLaw& radial,
                                  const std::vector<std::vector<double>>& points, std::size_t n,
                                  const RngStream& rng, unsigned threads) {
  const auto batch = sample_survival_batch(d, p, radial, n, rng, threads);
  const auto phi = radial.generator_fn();
  double worst = 0.0;
  for (const auto& z : points) {
    if (static_cast<int>(z.size()) != d.value()) throw ParameterError("survival point dimension");
    std::size_t count = 0;
    for (std::size_t i = 0; i < batch.rows(); ++i) {
      const auto row = batch.row(i);
      bool above = true;
      for (std::size_t j = 0; j < z.size() && above; ++j) above = row[j] > z[j];
      count += above;
    }
    worst = std::max(worst, std::abs(binomial_z(count, n, survival_value(phi, z, p))));
  }
  return worst;
}

MaxIdCdfResult check_maxid_cdf(Dimension d, PowerParam p, const RadialRadonMeasure& nu,
                               std::span<const double> axis, std::size_t n, const RngStream& rng,
                               unsigned threads) {
  const std::size_t dim = static_cast<std::size_t>(d.value());
  const auto batch = sample_maxid_batch(d, p, nu, n, rng, threads, true);
  const auto phi = nu.generator_fn(d);
  MaxIdCdfResult r;
  double total_points = 0.0;
  for (std::size_t i = 0; i < batch.rows(); ++i) {
    const auto points = static_cast<std::size_t>(batch.row(i)[dim]);
    total_points += static_cast<double>(points);
    r.max_points = std::max(r.max_points, points);
  }
  r.mean_points = total_points / static_cast<double>(n);

  std::size_t grid_size = 1;
  for (std::size_t j = 0; j < dim; ++j) grid_size *= axis.size();
  std::vector<double> y(dim);
  for (std::size_t g = 0; g < grid_size; ++g) {
    std::size_t rem = g;
    for (std::size_t j = 0; j < dim; ++j) {
      y[j] = axis[rem % axis.size()];
      rem /= axis.size();
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < batch.rows(); ++i) {
      const auto row = batch.row(i);
      bool below = true;
      for (std::size_t j = 0; j < dim && below; ++j) below = row[j] <= y[j];
      count += below;
    }
    r.max_z = std::max(r.max_z, std::abs(binomial_z(count, n, maxid_cdf(phi, y, p))));
  }
  return r;
}

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

nlohmann::ordered_json VerificationReport::to_json() const {
  Json j;
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json item;
    item["name"] = c.name;
    item["params"] = c.params;
    item["metric"] = c.metric;
    item["tolerance"] = c.tolerance;
    item["pass"] = c.pass;
    item["seconds"] = c.seconds;
    arr.push_back(std::move(item));
  }
  j["checks"] = std::move(arr);
  j["pass"] = pass();
  j["seed"] = seed;
  return j;
}

VerificationReport run_suite(const SuiteConfig& config) {
  VerificationReport report;
  report.seed = config.seed;
  const unsigned threads = config.threads;
  const std::size_t n_big = config.quick ? 20'000 : 100'000;
  const std::size_t n_tau = 5'000;
  const std::size_t n_maxid = config.quick ? 20'000 : 100'000;
  const int recur_max_d = config.quick ? 5 : 8;

  auto stream_for = [&](const std::string& name) {
    return RngStream(config.seed, name_hash(name));
  };
  // Runs body(rng) -> {metric, pass}; records wall time.
  auto run = [&](std::string name, Json params, double tolerance, auto&& body) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult c;
    c.name = name;
    c.params = std::move(params);
    c.tolerance = tolerance;
    RngStream rng = stream_for(name);
    auto [metric, pass] = body(rng);
    c.metric = metric;
    c.pass = pass;
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.checks.push_back(std::move(c));
  };

  const std::vector<double> p_grid_coeff{1.0, 1.25, 2.0, 4.0, 10.0};
  run("coefficient_table", Json{{"d_max", 12}, {"p", p_grid_coeff}}, 1e-12, [&](RngStream&) {
    double worst = 0.0;
    bool nonneg = true;
    for (int d = 2; d <= 12; ++d) {
      for (double pv : p_grid_coeff) {
        const auto t = coefficient_table(Dimension(d), PowerParam(pv));
        for (int k = 1; k <= d; ++k) {
          double sum = 0.0;
          for (double a : t.row(k)) {
            sum += a;
            nonneg = nonneg && a >= 0.0;
          }
          worst = std::max(worst, std::abs(sum - 1.0));
        }
        worst = std::max(worst, std::abs(t.at(d, 1) - std::pow(pv, -(d - 1))));
      }
    }
    return std::pair{worst, nonneg && worst <= 1e-12};
  });

  run("beta_identities", Json{{"m_max", 8}, {"n_max", 8}}, 1e-10, [&](RngStream&) {
    double worst = 0.0;
    for (int m = 1; m <= 8; ++m) {
      for (int n = 1; n <= 8; ++n) {
        for (double x : linspace(0.02, 0.98, 25)) {
          auto [a, b] = beta_identity_residuals(m, n, x);
          worst = std::max({worst, a, b});
        }
      }
    }
    return std::pair{worst, worst <= 1e-10};
  });

  const std::vector<double> p_grid{1.0, 1.5, 2.0, 4.0};
  const auto grid50 = linspace(0.0, 1.0, 50);
  run("recur1_quadrature", Json{{"d_max", recur_max_d}, {"p", p_grid}, {"grid", 50}}, 1e-8,
      [&](RngStream&) {
        double worst = 0.0;
        for (int d = 2; d <= recur_max_d; ++d) {
          for (double pv : p_grid) {
            for (int k = 1; k <= d; ++k) {
              worst = std::max(worst, check_recur1(Dimension(d), PowerParam(pv), k, grid50));
            }
          }
        }
        return std::pair{worst, worst <= 1e-8};
      });
  run("williamson_vp_quadrature", Json{{"d_max", recur_max_d}, {"p", p_grid}, {"grid", 50}}, 1e-8,
      [&](RngStream&) {
        double worst = 0.0;
        for (int d = 2; d <= recur_max_d; ++d) {
          for (double pv : p_grid) {
            worst = std::max(worst, check_williamson_vp(Dimension(d), PowerParam(pv), grid50));
          }
        }
        return std::pair{worst, worst <= 1e-8};
      });

  for (int d : {2, 3, 5, 10}) {
    for (double pv : p_grid) {
      const std::string tag = "[d=" + std::to_string(d) + ",p=" + fmt_num(pv) + "]";
      const Json params{{"d", d}, {"p", pv}, {"n", n_big}};
      VpLawResult law;
      run("vp_atom" + tag, params, 4.0, [&](RngStream& rng) {
        law = check_vp_law(Dimension(d), PowerParam(pv), n_big, rng, threads);
        return std::pair{std::abs(law.atom_z), std::abs(law.atom_z) <= 4.0};
      });
      if (law.continuous_ks.n > 0) {
        CheckResult c;
        c.name = "vp_continuous_ks" + tag;
        c.params = Json{{"d", d}, {"p", pv}, {"m", law.continuous_ks.n}};
        c.metric = law.continuous_ks.statistic;
        c.tolerance = law.continuous_ks.critical_1pct;
        c.pass = law.continuous_ks.pass;
        report.checks.push_back(std::move(c));
      }
    }
  }

  run("vp_level_ks[d=4,p=2,k=2]", Json{{"d", 4}, {"p", 2.0}, {"k", 2}, {"n", n_big}},
      kKsCritical1pct / std::sqrt(static_cast<double>(n_big)), [&](RngStream& rng) {
        const Dimension d(4);
        const PowerParam p(2.0);
        const auto mix = mixture_for_level(coefficient_table(d, p), 2);
        std::vector<double> xs(n_big);
        for_each_chunk(n_big, rng, threads, [&](RngStream& r, std::size_t b, std::size_t e) {
          VpSampler s(d, p);
          for (std::size_t i = b; i < e; ++i) xs[i] = s.sample_level(2, r);
        });
        std::sort(xs.begin(), xs.end());
        auto ks = ks_one_sample(xs, [&](double x) { return mixture_cdf(mix, x); });
        return std::pair{ks.statistic, ks.pass};
      });

  run("vp_williamson_mc[d=3,p=2]", Json{{"d", 3}, {"p", 2.0}, {"n", n_big}}, 4.0,
      [&](RngStream& rng) {
        const Dimension d(3);
        const PowerParam p(2.0);
        const auto draws = sample_vp_batch(d, p, n_big, rng, threads);
        double worst = 0.0;
        for (double x : linspace(0.05, 0.95, 10)) {
          double mean = 0.0, m2 = 0.0;
          for (std::size_t i = 0; i < draws.size(); ++i) {
            const double v = draws[i].value;
            const double k = kernel_power(1.0 - x / (v * v), 2);
            const double delta = k - mean;
            mean += delta / static_cast<double>(i + 1);
            m2 += delta * (k - mean);
          }
          const double se = std::sqrt(m2 / static_cast<double>(n_big - 1) / static_cast<double>(n_big));
          const double target = kernel_power(1.0 - std::sqrt(x), 2);
          worst = std::max(worst, std::abs(mean - target) / se);
        }
        return std::pair{worst, worst <= 4.0};
      });

  const auto x_grid = linspace(0.1, 3.0, 12);
  run("radial_williamson[clayton a=1.75,d=2]", Json{{"a", 1.75}, {"d", 2}, {"n", n_big}}, 4.0,
      [&](RngStream& rng) {
        auto r = williamson_residual(RadialLaw::clayton(Dimension(2), 1.75), x_grid, n_big, rng);
        return std::pair{r.max_z, r.max_z <= 4.0};
      });
  run("radial_williamson[erlang,d=3]", Json{{"d", 3}, {"n", n_big}}, 4.0, [&](RngStream& rng) {
    auto r = williamson_residual(RadialLaw::erlang(Dimension(3)), x_grid, n_big, rng);
    return std::pair{r.max_z, r.max_z <= 4.0};
  });
  run("clayton_radial_ks[a=1.75,d=2]", Json{{"a", 1.75}, {"d", 2}, {"n", n_big}},
      kKsCritical1pct / std::sqrt(static_cast<double>(n_big)), [&](RngStream& rng) {
        const Dimension d(2);
        const auto law = RadialLaw::clayton(d, 1.75);
        std::vector<double> xs(n_big);
        for (auto& x : xs) x = law.sample(rng) / 1.75;
        std::sort(xs.begin(), xs.end());
        auto ks = ks_one_sample(xs, [&](double s) {
          return clayton_radial_cdf(1.75, d, std::clamp(s, 0.0, 1.0) * 1.75);
        });
        return std::pair{ks.statistic, ks.pass};
      });

  struct SurvivalCase {
    int d;
    double p;
    std::string radial;
    std::vector<std::vector<double>> points;
  };
  const std::vector<SurvivalCase> survival_cases{
      {2, 2.0, "unit", {{0.3, 0.4}, {0.1, 0.1}, {0.5, 0.2}, {0.05, 0.6}}},
      {2, 1.0, "unit", {{0.2, 0.3}, {0.1, 0.6}}},
      {3, 1.5, "unit", {{0.1, 0.2, 0.1}, {0.05, 0.05, 0.05}, {0.2, 0.1, 0.3}}},
      {3, 2.5, "clayton:3", {{0.2, 0.3, 0.1}, {0.5, 0.5, 0.5}}},
      {4, 3.0, "erlang", {{0.2, 0.3, 0.1, 0.4}, {0.5, 0.1, 0.1, 0.1}}},
  };
  for (const auto& sc : survival_cases) {
    const std::string name =
        "survival_mc[d=" + std::to_string(sc.d) + ",p=" + fmt_num(sc.p) + "," + sc.radial + "]";
    run(name, Json{{"d", sc.d}, {"p", sc.p}, {"radial", sc.radial}, {"n", n_big}}, 4.0,
        [&](RngStream& rng) {
          const Dimension d(sc.d);
          double z = check_survival_frequencies(d, PowerParam(sc.p), parse_radial_spec(sc.radial, d),
                                                sc.points, n_big, rng, threads);
          return std::pair{z, z <= 4.0};
        });
  }

  for (double pv : {1.0, 2.5}) {
    const std::string name = "copula_uniform[d=2,p=" + fmt_num(pv) + ",clayton:1.75]";
    run(name, Json{{"d", 2}, {"p", pv}, {"a", 1.75}, {"n", n_big}},
        kKsCritical1pct / std::sqrt(static_cast<double>(n_big)), [&](RngStream& rng) {
          const Dimension d(2);
          auto batch = copula_batch(d, PowerParam(pv), RadialLaw::clayton(d, 1.75), n_big, rng, threads);
          double worst = 0.0;
          bool pass = true;
          for (std::size_t j = 0; j < 2; ++j) {
            auto col = batch.column(j);
            std::sort(col.begin(), col.end());
            auto ks = ks_one_sample(col, [](double u) { return std::clamp(u, 0.0, 1.0); });
            worst = std::max(worst, ks.statistic);
            pass = pass && ks.pass;
          }
          return std::pair{worst, pass};
        });
  }

  for (auto [d, pv] : {std::pair{2, 1.0}, std::pair{2, 2.0}, std::pair{3, 1.0}, std::pair{3, 2.0}}) {
    const std::string name = "kendall_tau[d=" + std::to_string(d) + ",p=" + fmt_num(pv) + "]";
    const double expected = kendall_tau_outer_power(PowerParam(pv), min_kendall_tau(d));
    run(name, Json{{"d", d}, {"p", pv}, {"n", n_tau}, {"expected", expected}}, 0.03,
        [&](RngStream& rng) {
          const Dimension dim(d);
          auto batch = sample_survival_batch(dim, PowerParam(pv), RadialLaw::unit(dim), n_tau, rng, threads);
          double tau = kendall_tau_estimate(batch.column(0), batch.column(1));
          double err = std::abs(tau - expected);
          return std::pair{err, err <= 0.03};
        });
  }

  run("simplex_marginal_ks[d=4]", Json{{"d", 4}, {"n", n_big}},
      kKsCritical1pct / std::sqrt(static_cast<double>(n_big)), [&](RngStream& rng) {
        const Dimension d(4);
        std::vector<double> xs(n_big);
        for (auto& x : xs) x = sample_simplex(d, rng).coordinates[0];
        std::sort(xs.begin(), xs.end());
        auto ks = ks_one_sample(xs, [](double x) { return beta_cdf(1, 3, x); });
        return std::pair{ks.statistic, ks.pass};
      });
  run("lp_sphere_arcsine_ks[d=2,p=2]", Json{{"d", 2}, {"p", 2.0}, {"n", n_big}},
      kKsCritical1pct / std::sqrt(static_cast<double>(n_big)), [&](RngStream& rng) {
        const Dimension d(2);
        const PowerParam p(2.0);
        std::vector<double> xs(n_big);
        double worst_norm = 0.0;
        for (auto& x : xs) {
          auto pt = sample_lp_sphere(d, p, rng);
          worst_norm = std::max(worst_norm, std::abs(lp_norm(pt.coordinates, 2.0) - 1.0));
          x = pt.coordinates[0] * pt.coordinates[0];
        }
        std::sort(xs.begin(), xs.end());
        auto ks = ks_one_sample(xs, [](double x) {
          return 2.0 / std::numbers::pi * std::asin(std::sqrt(std::clamp(x, 0.0, 1.0)));
        });
        return std::pair{ks.statistic, ks.pass && worst_norm <= 1e-10};
      });

  const std::vector<double> y_axis{0.25, 0.5, 0.75};
  const auto harmonic = RadialRadonMeasure::harmonic(1.125);
  for (int d : {2, 3}) {
    for (double pv : {1.0, 2.0, 4.0}) {
      const std::string name = "maxid_cdf[d=" + std::to_string(d) + ",p=" + fmt_num(pv) + ",harmonic:1.125]";
      Json params{{"d", d}, {"p", pv}, {"a", 1.125}, {"n", n_maxid}, {"y_axis", y_axis}};
      MaxIdCdfResult res;
      run(name, params, 4.0, [&](RngStream& rng) {
        res = check_maxid_cdf(Dimension(d), PowerParam(pv), harmonic, y_axis, n_maxid, rng, threads);
        return std::pair{res.max_z, res.max_z <= 4.0};
      });
      report.checks.back().params["mean_points"] = res.mean_points;
      report.checks.back().params["max_points"] = res.max_points;
    }
  }
  run("maxid_exchangeable[d=3,p=2]", Json{{"d", 3}, {"p", 2.0}, {"n", n_maxid}},
      kKsCritical1pct * std::sqrt(2.0 / static_cast<double>(n_maxid / 2)), [&](RngStream& rng) {
        const Dimension d(3);
        auto batch = sample_maxid_batch(d, PowerParam(2.0), harmonic, n_maxid, rng, threads);
        const std::size_t half = n_maxid / 2;
        std::vector<double> first, second;
        for (std::size_t i = 0; i < half; ++i) first.push_back(batch.row(i)[0]);
        for (std::size_t i = half; i < 2 * half; ++i) second.push_back(batch.row(i)[1]);
        std::sort(first.begin(), first.end());
        std::sort(second.begin(), second.end());
        auto ks = ks_two_sample(first, second);
        return std::pair{ks.statistic, ks.pass};
      });
  for (double pv : {1.0, 4.0}) {
    const std::size_t n_rc = 10'000;
    run("rcopula_uniform[d=2,p=" + fmt_num(pv) + ",harmonic:1.125]",
        Json{{"d", 2}, {"p", pv}, {"a", 1.125}, {"n", n_rc}},
        kKsCritical1pct / std::sqrt(static_cast<double>(n_rc)), [&](RngStream& rng) {
          auto batch = reciprocal_copula_batch(Dimension(2), PowerParam(pv), harmonic, n_rc, rng, threads);
          double worst = 0.0;
          bool pass = true;
          for (std::size_t j = 0; j < 2; ++j) {
            auto col = batch.column(j);
            std::sort(col.begin(), col.end());
            auto ks = ks_one_sample(col, [](double u) { return std::clamp(u, 0.0, 1.0); });
            worst = std::max(worst, ks.statistic);
            pass = pass && ks.pass;
          }
          return std::pair{worst, pass};
        });
  }

  for (auto [d, pv] : {std::pair{3, 2.0}, std::pair{2, 4.0}}) {
    const std::string name = "stable_identity[d=" + std::to_string(d) + ",p=" + fmt_num(pv) + "]";
    run(name, Json{{"d", d}, {"p", pv}, {"n", n_big}},
        kKsCritical1pct * std::sqrt(2.0 / static_cast<double>(n_big)), [&](RngStream& rng) {
          auto ks = check_stable_identity(Dimension(d), PowerParam(pv), n_big, rng, threads);
          return std::pair{ks.statistic, ks.pass};
        });
  }
  return report;
}

}  // namespace lpsym
