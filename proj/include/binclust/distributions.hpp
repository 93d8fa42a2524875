#pragma once

#include <cstdint>
#include <random>

#include "binclust/types.hpp"

namespace binclust {

/// SplitMix64 step; used to derive independent per-chain seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed of the `stream`-th independent stream derived from a user seed.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

/// Seedable random stream. One instance per chain; never shared.
/// All variate code consumes raw 64-bit words from the fully specified
/// mt19937_64 engine, so sequences are reproducible across platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for chain `stream` derived from a user seed.
  static Rng for_stream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t raw() { return engine_(); }

  /// Uniform on the open interval (0,1).
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Unbiased integer in [0, n), n >= 1.
  std::uint64_t uniform_below(std::uint64_t n);

private:
  std::mt19937_64 engine_;
};

// Standard-normal helpers. The quantile is Acklam's rational approximation
// polished by one Halley step, accurate to ~1e-15 over (0,1).
double norm_pdf(double z);
double norm_cdf(double z);
double norm_sf(double z);
double norm_log_sf(double z);  // stable far into the upper tail
double norm_quantile(double p);

/// N(mu, sd^2) draw via inverse CDF.
double sample_normal(double mu, double sd, Rng& rng);

/// Draw from N(mu, sd^2) restricted to (lo, hi]; lo may be -inf, hi +inf.
/// Inverse-CDF sampling when the interval mass is at least 1e-12, otherwise a
/// Robert-style tail rejection sampler. Throws EmptyInterval when lo >= hi and
/// NumericalUnderflow when the interval holds no reachable interior point.
double sample_truncated_normal(double mu, double sd, double lo, double hi, Rng& rng);

/// Gamma draw in shape-rate parameterization (Marsaglia-Tsang).
double sample_gamma(double shape, double rate, Rng& rng);

/// Beta draw on the open interval (0,1).
double sample_beta(double a, double b, Rng& rng);

}  // namespace binclust
