#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "lpsym/batch.hpp"
#include "lpsym/params.hpp"
#include "lpsym/rng.hpp"
#include "lpsym/vp_sampler.hpp"

namespace lpsym {

/// Generator t -> phi_nu(t) of a max-id law, t > 0.
struct MaxIdGenerator {
  std::function<double(double)> phi;

  double operator()(double t) const { return phi(t); }
};

/// nu = a * sum_k delta_{1/k}; G^-1(t) = 1/ceil(t/a).
struct HarmonicAtoms {
  double a = 1.0;
};

/// User-supplied generalized inverse t -> G^-1(t), optionally with the
/// generator phi_nu(t; d) when it is known.
struct CustomInverse {
  std::function<double(double)> inverse;
  std::function<double(double, int)> generator;
};

/// Non-finite radial Radon measure nu on (0, inf] with nu({inf}) = 0,
/// described through its survival function's generalized inverse.
class RadialRadonMeasure {
 public:
  using Variant = std::variant<HarmonicAtoms, CustomInverse>;

  explicit RadialRadonMeasure(Variant v);

  static RadialRadonMeasure harmonic(double a) { return RadialRadonMeasure(HarmonicAtoms{a}); }

  /// Step measure from knots t_1 < ... < t_m and values x_1 > ... > x_m > 0:
  /// G^-1(t) = x_i on (t_{i-1}, t_i] (t_0 = 0), i.e. an atom of mass
  /// t_i - t_{i-1} at x_i. Beyond t_m the inverse continues as x_m t_m / t,
  /// which is the measure with density x_m t_m / r^2 on (0, x_m).
  static RadialRadonMeasure from_table(std::vector<double> t, std::vector<double> x);

  double inverse_survival(double t) const;
  bool has_generator() const;
  double generator(double t, Dimension d) const;
  MaxIdGenerator generator_fn(Dimension d) const;

  const Variant& measure() const noexcept { return v_; }

 private:
  Variant v_;
};

/// Parses "harmonic:A".
RadialRadonMeasure parse_measure_spec(std::string_view spec);

double harmonic_inverse(double a, double t);

/// a * sum_{k=1}^{floor(1/t)} (1 - k t)^(d-1); zero for t >= 1.
double harmonic_generator(double a, Dimension d, double t);

struct MaxIdSample {
  std::vector<double> y;
  /// Number of arrivals eta examined, including the final one that stopped the loop.
  std::size_t n_points = 0;
};

struct MaxIdOptions {
  std::size_t max_points = 10'000'000;
};

/// Exact sampler for the max-id vector
///   Y_j = max_k G^-1(T_k) Z_j^(k),  T_k unit-rate Poisson arrivals,
/// with Z^(k) iid copies of V_p (xi/||xi||_1)^theta. Since Z lies in [0,1]^d,
/// no later arrival can change Y once G^-1(T) <= min_j Y_j.
class MaxIdSampler {
 public:
  MaxIdSampler(Dimension d, PowerParam p, RadialRadonMeasure nu, MaxIdOptions options = {});

  /// Writes Y into y (size d) and returns the number of arrivals examined.
  std::size_t sample_into(RngStream& rng, std::span<double> y);
  MaxIdSample sample(RngStream& rng);

 private:
  Dimension d_;
  PowerParam p_;
  RadialRadonMeasure nu_;
  MaxIdOptions options_;
  VpSampler vp_;
  std::vector<double> xi_;
};

MaxIdSample sample_maxid(Dimension d, PowerParam p, const RadialRadonMeasure& nu, RngStream& rng,
                         MaxIdOptions options = {});

/// P(Y <= y) = exp(-sum_{I != {}} (-1)^(|I|+1) phi(||y_I||_p)), by subset
/// enumeration ordered by cardinality with compensated summation. At most
/// 25 coordinates.
double maxid_cdf(const MaxIdGenerator& phi, std::span<const double> y, PowerParam p);

/// exp(-phi(Y_j)) componentwise.
std::vector<double> reciprocal_copula_sample(Dimension d, PowerParam p, const RadialRadonMeasure& nu,
                                             RngStream& rng, MaxIdOptions options = {});

/// d columns of Y, plus an n_points column when emit_npoints is set.
SampleBatch sample_maxid_batch(Dimension d, PowerParam p, const RadialRadonMeasure& nu, std::size_t n,
                               const RngStream& rng, unsigned threads = 1, bool emit_npoints = false,
                               MaxIdOptions options = {});

SampleBatch reciprocal_copula_batch(Dimension d, PowerParam p, const RadialRadonMeasure& nu,
                                    std::size_t n, const RngStream& rng, unsigned threads = 1,
                                    bool emit_npoints = false, MaxIdOptions options = {});

}  // namespace lpsym
