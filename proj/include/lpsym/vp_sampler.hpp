#pragma once

#include <cstddef>
#include <vector>

#include "lpsym/params.hpp"
#include "lpsym/rng.hpp"

namespace lpsym {

/// One draw of V_p; is_atom marks the exact point mass at one.
struct VpSample {
  double value = 1.0;
  bool is_atom = true;
};

/// Exact sampler for the radial mixing variable V_p via order statistics of
/// d-1 uniforms and a Bernoulli counting process.
///
/// The d-1 uniforms are sorted and W_(d) = 1 is appended. The chain starts
/// at N_1 = 1 and for j = 2..d increments N with probability
/// theta * N_{j-1} / (j-1). The result is W_(N_k); truncating the chain at
/// step k yields a draw from the level-k law F_d^k, and k = d gives V_p.
/// Holds a scratch buffer, so one instance must not be shared across threads.
class VpSampler {
 public:
  VpSampler(Dimension d, PowerParam p);

  VpSample sample(RngStream& rng);
  /// W_(N_k) for 1 <= k <= d.
  double sample_level(int k, RngStream& rng);

  Dimension dimension() const noexcept { return d_; }
  PowerParam power() const noexcept { return p_; }

 private:
  /// Returns N_k and leaves the sorted order statistics in w_.
  int run_chain(int k, RngStream& rng);

  Dimension d_;
  PowerParam p_;
  std::vector<double> w_;
};

VpSample sample_vp(Dimension d, PowerParam p, RngStream& rng);
double sample_vp_level(Dimension d, PowerParam p, int k, RngStream& rng);

/// n independent draws; chunk c of the batch uses rng.substream(c), so the
/// output is identical for every thread count.
std::vector<VpSample> sample_vp_batch(Dimension d, PowerParam p, std::size_t n,
                                      const RngStream& rng, unsigned threads = 1);

}  // namespace lpsym
