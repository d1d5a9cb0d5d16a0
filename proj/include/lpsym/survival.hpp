#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lpsym/batch.hpp"
#include "lpsym/params.hpp"
#include "lpsym/radial.hpp"
#include "lpsym/rng.hpp"
#include "lpsym/vp_sampler.hpp"

namespace lpsym {

/// Point on the unit simplex S_{d,1}.
struct SimplexPoint {
  std::vector<double> coordinates;
};

/// Point on the positive part of the unit l_p sphere.
struct LpSpherePoint {
  std::vector<double> coordinates;
  double p = 1.0;
};

/// The (r, vp, u) draws a survival sample was built from.
struct Provenance {
  double r = 1.0;
  double vp = 1.0;
  std::vector<double> u;
};

struct SurvivalSample {
  std::vector<double> z;
  std::optional<Provenance> provenance;
};

double lp_norm(std::span<const double> x, double p);

/// Normalized iid unit exponentials.
SimplexPoint sample_simplex(Dimension d, RngStream& rng);

/// xi / ||xi||_p with xi_i = eta_i^(1/p), eta_i ~ Gamma(shape 1/p, rate 1/p).
LpSpherePoint sample_lp_sphere(Dimension d, PowerParam p, RngStream& rng);

/// Sampler for Z = R * V_p * U^theta, whose survival function is
/// phi(||z||_p) with phi the Williamson d-transform of R.
/// Draw order per sample: R, then V_p, then the d exponentials behind U.
class SurvivalSampler {
 public:
  SurvivalSampler(Dimension d, PowerParam p, RadialLaw radial);

  /// Writes one sample into out (size d); fills prov when non-null.
  void sample_into(RngStream& rng, std::span<double> out, Provenance* prov = nullptr);
  SurvivalSample sample(RngStream& rng, bool keep_provenance = false);

  const RadialLaw& radial() const noexcept { return radial_; }

 private:
  Dimension d_;
  PowerParam p_;
  RadialLaw radial_;
  VpSampler vp_;
  std::vector<double> xi_;
};

SurvivalSample sample_survival(Dimension d, PowerParam p, const RadialLaw& radial, RngStream& rng,
                               bool keep_provenance = false);

/// phi(||z||_p).
double survival_value(const GeneratorFn& generator, std::span<const double> z, PowerParam p);

/// phi applied componentwise to a survival sample; an outer power
/// Archimedean copula draw with generator x -> phi(x^theta).
std::vector<double> copula_sample(Dimension d, PowerParam p, const RadialLaw& radial, RngStream& rng);

/// Kendall's tau of two components of Z: 1 - theta + theta * tau_phi.
double kendall_tau_outer_power(PowerParam p, double tau_phi);

/// tau_phi attained by R == 1, the minimum over all radial laws: -1/(2d-3).
double min_kendall_tau(int d);

/// n samples as a d-column batch. With keep_provenance the batch has
/// 2d+2 columns: z_1..z_d, r, vp, u_1..u_d.
SampleBatch sample_survival_batch(Dimension d, PowerParam p, const RadialLaw& radial, std::size_t n,
                                  const RngStream& rng, unsigned threads = 1,
                                  bool keep_provenance = false);

SampleBatch copula_batch(Dimension d, PowerParam p, const RadialLaw& radial, std::size_t n,
                         const RngStream& rng, unsigned threads = 1);

}  // namespace lpsym
