#include "lpsym/maxid.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

namespace lpsym {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

RadialRadonMeasure::RadialRadonMeasure(Variant v) : v_(std::move(v)) {
  if (const auto* h = std::get_if<HarmonicAtoms>(&v_)) {
    if (!(h->a > 0.0) || !std::isfinite(h->a)) {
      throw ParameterError("harmonic measure requires a > 0");
    }
  } else if (!std::get<CustomInverse>(v_).inverse) {
    throw ParameterError("custom measure needs an inverse survival function");
  }
}

RadialRadonMeasure RadialRadonMeasure::from_table(std::vector<double> t, std::vector<double> x) {
  if (t.size() != x.size() || t.empty()) {
    throw ParameterError("measure table needs matching, non-empty knot and value lists");
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || !(x[i] > 0.0) || !std::isfinite(t[i]) || !std::isfinite(x[i])) {
      throw ParameterError("measure table entries must be positive and finite");
    }
    if (i > 0 && !(t[i] > t[i - 1] && x[i] < x[i - 1])) {
      throw ParameterError("measure table knots must increase and values strictly decrease");
    }
  }
  auto inverse = [t, x](double s) {
    auto it = std::lower_bound(t.begin(), t.end(), s);
    if (it == t.end()) return x.back() * t.back() / s;
    return x[static_cast<std::size_t>(it - t.begin())];
  };
  auto generator = [t, x](double s, int d) {
    double total = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (x[i] > s) total += (t[i] - prev) * std::pow(1.0 - s / x[i], d - 1);
      prev = t[i];
    }
    const double tail = x.back() * t.back();
    if (s < x.back()) total += tail / s * std::pow(1.0 - s / x.back(), d) / d;
    return total;
  };
  return RadialRadonMeasure(CustomInverse{inverse, generator});
}

double RadialRadonMeasure::inverse_survival(double t) const {
  return std::visit(overloaded{
                        [&](const HarmonicAtoms& h) { return harmonic_inverse(h.a, t); },
                        [&](const CustomInverse& c) { return c.inverse(t); },
                    },
                    v_);
}

bool RadialRadonMeasure::has_generator() const {
  if (const auto* c = std::get_if<CustomInverse>(&v_)) return static_cast<bool>(c->generator);
  return true;
}

double RadialRadonMeasure::generator(double t, Dimension d) const {
  if (!(t > 0.0)) throw ParameterError("max-id generator argument must be > 0");
  return std::visit(overloaded{
                        [&](const HarmonicAtoms& h) { return harmonic_generator(h.a, d, t); },
                        [&](const CustomInverse& c) {
                          if (!c.generator) throw ParameterError("measure has no generator");
                          return c.generator(t, d.value());
                        },
                    },
                    v_);
}

MaxIdGenerator RadialRadonMeasure::generator_fn(Dimension d) const {
  RadialRadonMeasure copy = *this;
  return MaxIdGenerator{[copy, d](double t) { return copy.generator(t, d); }};
}

RadialRadonMeasure parse_measure_spec(std::string_view spec) {
  if (spec.starts_with("harmonic:")) {
    auto rest = spec.substr(9);
    double a = 0.0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), a);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) {
      throw ParameterError("cannot parse harmonic parameter '" + std::string(rest) + "'");
    }
    return RadialRadonMeasure::harmonic(a);
  }
  throw ParameterError("unknown measure spec '" + std::string(spec) + "' (expected harmonic:A)");
}

double harmonic_inverse(double a, double t) {
  if (!(a > 0.0) || !(t > 0.0)) throw ParameterError("harmonic inverse requires a > 0 and t > 0");
  // t/a is exact whenever t is an integer multiple of a that is representable;
  // boundary hits have probability zero under exponential arrivals.
  return 1.0 / std::ceil(t / a);
}

double harmonic_generator(double a, Dimension d, double t) {
  if (!(a > 0.0) || !(t > 0.0)) throw ParameterError("harmonic generator requires a > 0 and t > 0");
  if (t >= 1.0) return 0.0;
  const double terms = std::floor(1.0 / t);
  const int power = d.value() - 1;
  double sum = 0.0;
  for (double k = 1.0; k <= terms; k += 1.0) {
    double base = 1.0 - k * t;
    if (base <= 0.0) break;
    sum += power == 1 ? base : std::pow(base, power);
  }
  return a * sum;
}

MaxIdSampler::MaxIdSampler(Dimension d, PowerParam p, RadialRadonMeasure nu, MaxIdOptions options)
    : d_(d), p_(p), nu_(std::move(nu)), options_(options), vp_(d, p), xi_(d.value()) {
  if (options_.max_points == 0) throw ParameterError("max_points must be >= 1");
}

std::size_t MaxIdSampler::sample_into(RngStream& rng, std::span<double> y) {
  const double theta = p_.theta();
  std::fill(y.begin(), y.end(), 0.0);
  double min_y = 0.0;
  double arrival = rng.exponential();
  double eta = nu_.inverse_survival(arrival);
  std::size_t points = 1;
  while (eta > min_y) {
    double sum = 0.0;
    for (double& v : xi_) {
      v = rng.exponential();
      sum += v;
    }
    const double vp = vp_.sample(rng).value;
    min_y = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < xi_.size(); ++j) {
      const double u = xi_[j] / sum;
      const double z = vp * (theta == 1.0 ? u : std::pow(u, theta));
      y[j] = std::max(y[j], eta * z);
      min_y = std::min(min_y, y[j]);
    }
    arrival += rng.exponential();
    const double next = nu_.inverse_survival(arrival);
    assert(next <= eta);
    eta = next;
    if (++points > options_.max_points) {
      throw SamplingError("max-id sampler exceeded " + std::to_string(options_.max_points) +
                          " points; the measure's inverse survival function may not tend to 0");
    }
  }
  return points;
}

MaxIdSample MaxIdSampler::sample(RngStream& rng) {
  MaxIdSample s;
  s.y.resize(d_.value());
  s.n_points = sample_into(rng, s.y);
  return s;
}

MaxIdSample sample_maxid(Dimension d, PowerParam p, const RadialRadonMeasure& nu, RngStream& rng,
                         MaxIdOptions options) {
  MaxIdSampler sampler(d, p, nu, options);
  return sampler.sample(rng);
}

double maxid_cdf(const MaxIdGenerator& phi, std::span<const double> y, PowerParam p) {
  const std::size_t d = y.size();
  if (d == 0 || d > 25) throw ParameterError("max-id cdf supports 1 to 25 coordinates");
  for (double v : y) {
    if (!(v > 0.0)) throw ParameterError("max-id cdf requires y > 0");
  }
  std::vector<double> powered(d);
  for (std::size_t j = 0; j < d; ++j) powered[j] = p.p() == 1.0 ? y[j] : std::pow(y[j], p.p());

  CompensatedSum exponent;
  const std::uint32_t full = (std::uint32_t{1} << d) - 1;
  for (std::size_t size = 1; size <= d; ++size) {
    const double sign = (size % 2 == 1) ? 1.0 : -1.0;
    // Gosper's hack: all masks with `size` bits set, in increasing order.
    std::uint32_t mask = (std::uint32_t{1} << size) - 1;
    while (mask <= full) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        if (mask & (std::uint32_t{1} << j)) s += powered[j];
      }
      const double norm = p.p() == 1.0 ? s : std::pow(s, p.theta());
      exponent.add(sign * phi(norm));
      const std::uint32_t low = mask & (~mask + 1);
      const std::uint32_t ripple = mask + low;
      if (ripple == 0 || ripple > (full << 1)) break;
      mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
  }
  return std::clamp(std::exp(-exponent.value()), 0.0, 1.0);
}

std::vector<double> reciprocal_copula_sample(Dimension d, PowerParam p, const RadialRadonMeasure& nu,
                                             RngStream& rng, MaxIdOptions options) {
  auto s = sample_maxid(d, p, nu, rng, options);
  for (double& v : s.y) v = std::exp(-nu.generator(v, d));
  return s.y;
}

SampleBatch sample_maxid_batch(Dimension d, PowerParam p, const RadialRadonMeasure& nu, std::size_t n,
                               const RngStream& rng, unsigned threads, bool emit_npoints,
                               MaxIdOptions options) {
  if (n == 0) throw ParameterError("batch size must be >= 1");
  const std::size_t dim = static_cast<std::size_t>(d.value());
  SampleBatch batch;
  batch.cols = emit_npoints ? dim + 1 : dim;
  batch.values.resize(n * batch.cols);
  batch.seed = rng.seed();
  batch.stream_id = rng.stream_id();
  for_each_chunk(n, rng, threads, [&](RngStream& chunk_rng, std::size_t begin, std::size_t end) {
    MaxIdSampler sampler(d, p, nu, options);
    for (std::size_t i = begin; i < end; ++i) {
      auto row = batch.row(i);
      std::size_t points = sampler.sample_into(chunk_rng, row.first(dim));
      if (emit_npoints) row[dim] = static_cast<double>(points);
    }
  });
  return batch;
}

SampleBatch reciprocal_copula_batch(Dimension d, PowerParam p, const RadialRadonMeasure& nu,
                                    std::size_t n, const RngStream& rng, unsigned threads,
                                    bool emit_npoints, MaxIdOptions options) {
  SampleBatch batch = sample_maxid_batch(d, p, nu, n, rng, threads, emit_npoints, options);
  const std::size_t dim = static_cast<std::size_t>(d.value());
  for (std::size_t i = 0; i < batch.rows(); ++i) {
    auto row = batch.row(i);
    for (std::size_t j = 0; j < dim; ++j) row[j] = std::exp(-nu.generator(row[j], d));
  }
  return batch;
}

}  // namespace lpsym
