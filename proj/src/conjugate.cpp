#include "binclust/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace binclust {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;

void check_params(const NormalGammaParams& p) {
  if (!std::isfinite(p.omega) || !(p.c > 0.0) || !(p.a > 0.0) || !(p.b > 0.0)) {
    throw Error(ErrorCode::InvalidParams, "normal-gamma params out of range");
  }
}

}  // namespace

NormalGammaParams ng_prior(const Hyperparams& hp) {
  NormalGammaParams p{hp.omega, hp.c, hp.a, hp.b};
  check_params(p);
  return p;
}

SufficientStats suff_stats(const Eigen::VectorXd& values) {
  std::vector<double> v(values.data(), values.data() + values.size());
  std::sort(v.begin(), v.end());
  SufficientStats s;
  s.n = static_cast<long>(v.size());
  for (double x : v) s.sum += x;
  for (double x : v) s.sumsq += x * x;
  return s;
}

NormalGammaParams posterior_params(const NormalGammaParams& prior,
                                   const SufficientStats& stats) {
  check_params(prior);
  if (stats.n < 0) throw Error(ErrorCode::InvalidParams, "negative count");
  if (stats.n == 0) return prior;

  const double n = static_cast<double>(stats.n);
  const double ybar = stats.sum / n;
  const double ss = std::max(0.0, stats.sumsq - stats.sum * ybar);
  const double denom = prior.c * n + 1.0;

  NormalGammaParams post;
  post.omega = (prior.c * stats.sum + prior.omega) / denom;
  post.c = prior.c / denom;
  post.a = prior.a + 0.5 * n;
  const double dev = ybar - prior.omega;
  post.b = prior.b + 0.5 * ss + n * dev * dev / (2.0 * denom);
  return post;
}

NormalGammaParams posterior_params(const NormalGammaParams& prior,
                                   const Eigen::VectorXd& values) {
  return posterior_params(prior, suff_stats(values));
}

double log_marginal_likelihood(const NormalGammaParams& prior,
                               const SufficientStats& stats) {
  check_params(prior);
  if (stats.n == 0) return 0.0;
  const NormalGammaParams post = posterior_params(prior, stats);
  const double n = static_cast<double>(stats.n);
  return -0.5 * n * kLog2Pi + 0.5 * std::log(post.c / prior.c) +
         std::lgamma(post.a) - std::lgamma(prior.a) +
         prior.a * std::log(prior.b) - post.a * std::log(post.b);
}

double log_marginal_likelihood(const NormalGammaParams& prior,
                               const Eigen::VectorXd& values) {
  return log_marginal_likelihood(prior, suff_stats(values));
}

double log_predictive(const NormalGammaParams& params, double y) {
  check_params(params);
  const double nu = 2.0 * params.a;
  const double scale2 = params.b * (1.0 + params.c) / params.a;
  const double t2 = (y - params.omega) * (y - params.omega) / scale2;
  return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
         0.5 * std::log(nu * M_PI * scale2) -
         0.5 * (nu + 1.0) * std::log1p(t2 / nu);
}

GroupParams sample_group_params(const NormalGammaParams& params, Rng& rng) {
  check_params(params);
  GroupParams gp;
  gp.lambda = sample_gamma(params.a, params.b, rng);
  gp.mu = params.omega + std::sqrt(params.c / gp.lambda) * sample_normal(0.0, 1.0, rng);
  return gp;
}

}  // namespace binclust
