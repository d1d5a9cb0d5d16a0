#include "lpsym/survival.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lpsym {

double lp_norm(std::span<const double> x, double p) {
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  // scale by the largest entry to avoid overflow/underflow in v^p
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / scale, p);
  return scale * std::pow(s, 1.0 / p);
}

SimplexPoint sample_simplex(Dimension d, RngStream& rng) {
  SimplexPoint out{std::vector<double>(d.value())};
  double sum = 0.0;
  for (double& v : out.coordinates) {
    v = rng.exponential();
    sum += v;
  }
  for (double& v : out.coordinates) v /= sum;
  return out;
}

LpSpherePoint sample_lp_sphere(Dimension d, PowerParam p, RngStream& rng) {
  LpSpherePoint out{std::vector<double>(d.value()), p.p()};
  const double shape = p.theta();
  for (double& v : out.coordinates) {
    double eta = rng.gamma(shape) * p.p();  // rate 1/p
    v = std::pow(eta, p.theta());
  }
  const double norm = lp_norm(out.coordinates, p.p());
  for (double& v : out.coordinates) v /= norm;
  return out;
}

SurvivalSampler::SurvivalSampler(Dimension d, PowerParam p, RadialLaw radial)
    : d_(d), p_(p), radial_(std::move(radial)), vp_(d, p), xi_(d.value()) {
  if (!(radial_.dimension() == d_)) throw ParameterError("radial law dimension mismatch");
}

void SurvivalSampler::sample_into(RngStream& rng, std::span<double> out, Provenance* prov) {
  const double r = radial_.sample(rng);
  const double vp = vp_.sample(rng).value;
  double sum = 0.0;
  for (double& v : xi_) {
    v = rng.exponential();
    sum += v;
  }
  const double scale = r * vp;
  const double theta = p_.theta();
  for (std::size_t i = 0; i < xi_.size(); ++i) {
    const double u = xi_[i] / sum;
    out[i] = scale * (theta == 1.0 ? u : std::pow(u, theta));
    if (prov) xi_[i] = u;
  }
  if (prov) {
    prov->r = r;
    prov->vp = vp;
    prov->u = xi_;
  }
}

SurvivalSample SurvivalSampler::sample(RngStream& rng, bool keep_provenance) {
  SurvivalSample s;
  s.z.resize(d_.value());
  if (keep_provenance) {
    Provenance prov;
    sample_into(rng, s.z, &prov);
    s.provenance = std::move(prov);
  } else {
    sample_into(rng, s.z);
  }
  return s;
}

SurvivalSample sample_survival(Dimension d, PowerParam p, const RadialLaw& radial, RngStream& rng,
                               bool keep_provenance) {
  SurvivalSampler sampler(d, p, radial);
  return sampler.sample(rng, keep_provenance);
}

double survival_value(const GeneratorFn& generator, std::span<const double> z, PowerParam p) {
  return generator(lp_norm(z, p.p()));
}

std::vector<double> copula_sample(Dimension d, PowerParam p, const RadialLaw& radial, RngStream& rng) {
  auto s = sample_survival(d, p, radial, rng);
  for (double& v : s.z) v = radial.generator(v);
  return s.z;
}

double kendall_tau_outer_power(PowerParam p, double tau_phi) {
  if (!(tau_phi >= -1.0 && tau_phi <= 1.0)) throw ParameterError("tau_phi must lie in [-1, 1]");
  return 1.0 - p.theta() + p.theta() * tau_phi;
}

double min_kendall_tau(int d) {
  if (d < 2) throw ParameterError("dimension must be >= 2, got " + std::to_string(d));
  return -1.0 / (2.0 * d - 3.0);
}

SampleBatch sample_survival_batch(Dimension d, PowerParam p, const RadialLaw& radial, std::size_t n,
                                  const RngStream& rng, unsigned threads, bool keep_provenance) {
  if (n == 0) throw ParameterError("batch size must be >= 1");
  const std::size_t dim = static_cast<std::size_t>(d.value());
  SampleBatch batch;
  batch.cols = keep_provenance ? 2 * dim + 2 : dim;
  batch.values.resize(n * batch.cols);
  batch.seed = rng.seed();
  batch.stream_id = rng.stream_id();
  for_each_chunk(n, rng, threads, [&](RngStream& chunk_rng, std::size_t begin, std::size_t end) {
    SurvivalSampler sampler(d, p, radial);
    Provenance prov;
    for (std::size_t i = begin; i < end; ++i) {
      auto row = batch.row(i);
      sampler.sample_into(chunk_rng, row.first(dim), keep_provenance ? &prov : nullptr);
      if (keep_provenance) {
        row[dim] = prov.r;
        row[dim + 1] = prov.vp;
        std::copy(prov.u.begin(), prov.u.end(), row.begin() + dim + 2);
      }
    }
  });
  return batch;
}

SampleBatch copula_batch(Dimension d, PowerParam p, const RadialLaw& radial, std::size_t n,
                         const RngStream& rng, unsigned threads) {
  SampleBatch batch = sample_survival_batch(d, p, radial, n, rng, threads);
  for (double& v : batch.values) v = radial.generator(v);
  return batch;
}

}  // namespace lpsym
