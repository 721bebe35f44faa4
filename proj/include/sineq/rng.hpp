#pragma once

#include <cstdint>
#include <random>

namespace sineq {

/// splitmix64 output function; used to derive decorrelated substream seeds.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t state);

/// Deterministic substream seed for (seed, stream).
[[nodiscard]] std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded random source with hand-rolled variate transforms so the byte
/// stream is identical across platforms (std distributions are not
/// specified; the mt19937_64 engine is).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1), never returns an endpoint.
  double uniform_pos() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via the Marsaglia polar method.
  double normal();

  /// Gamma(shape, 1) via Marsaglia-Tsang; shape < 1 handled by boosting.
  double gamma_variate(double shape);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sineq
