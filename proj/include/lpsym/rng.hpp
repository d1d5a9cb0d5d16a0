#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace lpsym {

/// A seeded random stream identified by (seed, stream id).
///
/// Identical (seed, stream id) pairs reproduce identical sequences. The
/// engine is std::mt19937_64 seeded through std::seed_seq, both of which are
/// fully specified by the standard; all variate transforms below are our own
/// so output does not depend on the standard library's distribution classes.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Child stream with an id derived deterministically from this stream's id.
  RngStream substream(std::uint64_t index) const;

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  double exponential();
  double normal();
  /// Gamma(shape, 1). Marsaglia-Tsang squeeze; shape < 1 via the U^(1/shape) boost.
  double gamma(double shape);
  double beta(double a, double b);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

/// SplitMix64 finalizer; used for stream-id derivation.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace lpsym
