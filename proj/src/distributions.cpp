#include "binclust/distributions.hpp"

#include <cmath>
#include <limits>

namespace binclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kLogSqrt2Pi = 0.9189385332046727;
constexpr double kSqrt2Pi = 2.5066282746310002;

// Mass threshold below which inverse-CDF sampling gives way to rejection.
constexpr double kInverseCdfMassFloor = 1e-12;

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  std::uint64_t derived = splitmix64(state);
  for (std::uint64_t i = 0; i < stream; ++i) derived = splitmix64(state);
  return derived;
}

Rng Rng::for_stream(std::uint64_t seed, std::uint64_t stream) {
  return Rng(derive_stream_seed(seed, stream));
}

std::uint64_t Rng::uniform_below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidParams, "uniform_below(0)");
  const std::uint64_t reject_above =
      std::numeric_limits<std::uint64_t>::max() -
      (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x > reject_above);
  return x % n;
}

double norm_pdf(double z) { return std::exp(-0.5 * z * z) / kSqrt2Pi; }

double norm_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double norm_sf(double z) { return 0.5 * std::erfc(z / kSqrt2); }

double norm_log_sf(double z) {
  if (z < 30.0) return std::log(norm_sf(z));
  // Asymptotic Mills expansion; erfc underflows past z ~ 38.
  const double z2 = z * z;
  const double series = -1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
  return -0.5 * z2 - std::log(z) - kLogSqrt2Pi + std::log1p(series);
}

double norm_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    if (p == 0.0) return -kInf;
    if (p == 1.0) return kInf;
    throw Error(ErrorCode::InvalidParams, "quantile argument outside [0,1]");
  }

  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;

  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // One Halley step. Residual computed against the tail-appropriate CDF form;
  // skipped where exp(x^2/2) would overflow (raw error ~1e-9 is fine there).
  if (std::abs(x) < 37.0) {
    double err;
    if (p < plow) {
      err = norm_sf(-x) - p;
    } else if (p <= 1.0 - plow) {
      err = norm_cdf(x) - p;
    } else {
      err = (1.0 - p) - norm_sf(x);
    }
    const double u = err * kSqrt2Pi * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double sample_normal(double mu, double sd, Rng& rng) {
  if (!(sd > 0.0)) throw Error(ErrorCode::InvalidParams, "sd must be positive");
  return mu + sd * norm_quantile(rng.uniform01());
}

namespace {

// One-sided Robert rejection from (a, inf), a >= 0; draws capped at b.
// Exponential proposal with the optimal rate (a + sqrt(a^2+4))/2.
bool robert_tail_draw(double a, double b, Rng& rng, double& out) {
  const double rate = 0.5 * (a + std::sqrt(a * a + 4.0));
  const double z = a - std::log(rng.uniform01()) / rate;
  if (z > b) return false;
  const double dz = z - rate;
  if (std::log(rng.uniform01()) < -0.5 * dz * dz) {
    out = z;
    return true;
  }
  return false;
}

// Uniform proposal on (a, b) against the densest point c of the interval.
bool uniform_slab_draw(double a, double b, double c, Rng& rng, double& out) {
  const double z = a + (b - a) * rng.uniform01();
  if (std::log(rng.uniform01()) < 0.5 * (c * c - z * z)) {
    out = z;
    return true;
  }
  return false;
}

// Rejection sampling of the standardized interval (a, b) when its normal mass
// is too small for the inverse CDF.
double tail_rejection(double a, double b, Rng& rng) {
  bool mirrored = false;
  if (b <= 0.0) {
    mirrored = true;
    const double ta = a;
    a = -b;
    b = -ta;
  }
  const int max_attempts = 20000;
  double z = 0.0;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    bool ok;
    if (a <= 0.0) {
      // Sliver straddling zero.
      ok = uniform_slab_draw(a, b, 0.0, rng, z);
    } else if (b == kInf || norm_log_sf(a) - norm_log_sf(b) >= 0.6931471805599453) {
      ok = robert_tail_draw(a, b, rng, z);
    } else {
      ok = uniform_slab_draw(a, b, a, rng, z);
    }
    if (ok && z > a && z <= b) return mirrored ? -z : z;
  }
  throw Error(ErrorCode::NumericalUnderflow,
              "truncated-normal interval holds no reachable mass");
}

}  // namespace

double sample_truncated_normal(double mu, double sd, double lo, double hi, Rng& rng) {
  if (!(sd > 0.0)) throw Error(ErrorCode::InvalidParams, "sd must be positive");
  if (!(lo < hi)) throw Error(ErrorCode::EmptyInterval, "need lo < hi");

  const double za = (lo == -kInf) ? -kInf : (lo - mu) / sd;
  const double zb = (hi == kInf) ? kInf : (hi - mu) / sd;
  if (!(za < zb)) {
    // Finite bounds collapsed under standardization.
    throw Error(ErrorCode::NumericalUnderflow, "interval collapses after standardization");
  }

  double mass;
  if (za <= 0.0 && zb >= 0.0) {
    mass = norm_cdf(zb) - norm_cdf(za);
  } else if (za > 0.0) {
    mass = norm_sf(za) - norm_sf(zb);
  } else {
    mass = norm_sf(-zb) - norm_sf(-za);
  }

  double z;
  if (mass >= kInverseCdfMassFloor) {
    const double u = rng.uniform01();
    if (za > 0.0) {
      z = -norm_quantile(norm_sf(za) - u * mass);
    } else if (zb < 0.0) {
      z = norm_quantile(norm_sf(-za) + u * mass);
    } else {
      z = norm_quantile(norm_cdf(za) + u * mass);
    }
  } else {
    z = tail_rejection(za, zb, rng);
  }

  double x = mu + sd * z;
  if (!(x > lo)) x = std::nextafter(lo, kInf);
  if (x > hi) x = hi;
  if (!(x > lo && x <= hi)) {
    throw Error(ErrorCode::NumericalUnderflow, "no representable point inside the interval");
  }
  return x;
}

double sample_gamma(double shape, double rate, Rng& rng) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw Error(ErrorCode::InvalidParams, "gamma shape and rate must be positive");
  }
  if (shape < 1.0) {
    // Boost the shape, then rescale by u^{1/shape}; redraw the (measure-zero
    // representable) underflow to keep the support strictly positive.
    for (;;) {
      const double g = sample_gamma(shape + 1.0, rate, rng);
      const double x = g * std::pow(rng.uniform01(), 1.0 / shape);
      if (x > 0.0) return x;
    }
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    const double x = norm_quantile(rng.uniform01());
    const double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    const double v = t * t * t;
    const double u = rng.uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x ||
        std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      const double g = d * v / rate;
      if (g > 0.0) return g;
    }
  }
}

double sample_beta(double a, double b, Rng& rng) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorCode::InvalidParams, "beta parameters must be positive");
  }
  for (;;) {
    const double x = sample_gamma(a, 1.0, rng);
    const double y = sample_gamma(b, 1.0, rng);
    const double r = x / (x + y);
    if (r > 0.0 && r < 1.0) return r;
  }
}

}  // namespace binclust
