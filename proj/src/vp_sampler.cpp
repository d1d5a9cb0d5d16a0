#include "lpsym/vp_sampler.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "lpsym/batch.hpp"

namespace lpsym {

VpSampler::VpSampler(Dimension d, PowerParam p) : d_(d), p_(p), w_(d.value()) {}

int VpSampler::run_chain(int k, RngStream& rng) {
  const int d = d_.value();
  if (k < 1 || k > d) {
    throw ParameterError("level k must lie in [1, d], got " + std::to_string(k));
  }
  for (int i = 0; i < d - 1; ++i) w_[i] = rng.uniform_open();
  std::sort(w_.begin(), w_.end() - 1);
  w_[d - 1] = 1.0;

  const double theta = p_.theta();
  int count = 1;
  for (int j = 2; j <= k; ++j) {
    const double prob = theta * count / (j - 1);
    assert(prob >= 0.0 && prob <= 1.0);
    if (rng.uniform() < prob) ++count;
  }
  return count;
}

VpSample VpSampler::sample(RngStream& rng) {
  const int d = d_.value();
  const int count = run_chain(d, rng);
  if (count == d) return {1.0, true};
  return {w_[count - 1], false};
}

double VpSampler::sample_level(int k, RngStream& rng) {
  const int count = run_chain(k, rng);
  return w_[count - 1];
}

VpSample sample_vp(Dimension d, PowerParam p, RngStream& rng) {
  VpSampler sampler(d, p);
  return sampler.sample(rng);
}

double sample_vp_level(Dimension d, PowerParam p, int k, RngStream& rng) {
  VpSampler sampler(d, p);
  return sampler.sample_level(k, rng);
}

std::vector<VpSample> sample_vp_batch(Dimension d, PowerParam p, std::size_t n,
                                      const RngStream& rng, unsigned threads) {
  if (n == 0) throw ParameterError("batch size must be >= 1");
  std::vector<VpSample> out(n);
  for_each_chunk(n, rng, threads, [&](RngStream& chunk_rng, std::size_t begin, std::size_t end) {
    VpSampler sampler(d, p);
    for (std::size_t i = begin; i < end; ++i) out[i] = sampler.sample(chunk_rng);
  });
  return out;
}

}  // namespace lpsym
