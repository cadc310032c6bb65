#include "bfp/estimators.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bfp/stat_kernels.hpp"

namespace bfp::estimators {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void require_same_model(const ProbitModel& model, const Chain& chain,
                        const char* who) {
  if (chain.meta.model_fingerprint != model.fingerprint()) {
    throw std::invalid_argument(std::string(who) +
                                ": chain was generated under a different model");
  }
}

// model0 must select a prefix of model1's columns with exactly one extra
// column at the end (the tested coordinate), over the same data.
void require_embedded(const ProbitModel& model0, const ProbitModel& model1,
                      const char* who) {
  const auto& c0 = model0.selected_columns();
  const auto& c1 = model1.selected_columns();
  const bool nested = model0.data() == model1.data() &&
                      c1.size() == c0.size() + 1 &&
                      std::equal(c0.begin(), c0.end(), c1.begin());
  if (!nested) {
    throw std::invalid_argument(
        std::string(who) +
        ": model0 must be model1 with its final covariate removed");
  }
}

long clamp_draw_count(long n, int available, const char* who) {
  if (n < 0) return available;
  if (n < 1 || n > available) {
    throw std::invalid_argument(std::string(who) + ": draw count out of range");
  }
  return n;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::crude_mc: return "mc";
    case Method::importance: return "is";
    case Method::bridge: return "bridge";
    case Method::bridge_opt: return "bridge_opt";
    case Method::harmonic: return "harmonic";
    case Method::chib: return "chib";
    case Method::pseudo_ratio: return "pseudo_ratio";
  }
  return "?";
}

LogEvidence crude_mc_evidence(const ProbitModel& model, long n, RngStream& rng) {
  if (n < 1) {
    throw std::invalid_argument("crude_mc_evidence: n must be >= 1");
  }
  const auto t0 = Clock::now();
  std::vector<double> log_lik(static_cast<std::size_t>(n));
  for (long j = 0; j < n; ++j) {
    const Eigen::VectorXd theta = mvn_sample(model.prior(), rng);
    log_lik[static_cast<std::size_t>(j)] = log_likelihood(theta, model);
  }
  return LogEvidence{log_mean_exp(log_lik), n, Method::crude_mc,
                     seconds_since(t0), false};
}

LogEvidence importance_evidence(const ProbitModel& model,
                                const GaussianSpec& proposal, long n,
                                RngStream& rng) {
  if (n < 1) {
    throw std::invalid_argument("importance_evidence: n must be >= 1");
  }
  if (proposal.dim() != model.p()) {
    throw std::invalid_argument("importance_evidence: proposal dimension mismatch");
  }
  const auto t0 = Clock::now();
  std::vector<double> log_w(static_cast<std::size_t>(n));
  for (long j = 0; j < n; ++j) {
    const Eigen::VectorXd theta = mvn_sample(proposal, rng);
    log_w[static_cast<std::size_t>(j)] =
        log_posterior_unnorm(theta, model) - mvn_logpdf(theta, proposal);
  }
  return LogEvidence{log_mean_exp(log_w), n, Method::importance,
                     seconds_since(t0), false};
}

double harmonic_log_evidence_core(std::span<const double> log_weights) {
  return -log_mean_exp(log_weights);
}

LogEvidence harmonic_evidence(const ProbitModel& model, const Chain& chain,
                              const GaussianSpec& phi) {
  require_same_model(model, chain, "harmonic_evidence");
  if (phi.dim() != model.p()) {
    throw std::invalid_argument("harmonic_evidence: phi dimension mismatch");
  }
  const auto t0 = Clock::now();
  const int T = chain.length();
  std::vector<double> log_w(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) {
    const Eigen::VectorXd theta = chain.theta_draws.row(t).transpose();
    log_w[static_cast<std::size_t>(t)] =
        mvn_logpdf(theta, phi) - log_posterior_unnorm(theta, model);
  }
  const double max_w = *std::max_element(log_w.begin(), log_w.end());
  const double mean_w =
      std::accumulate(log_w.begin(), log_w.end(), 0.0) / T;
  LogEvidence out{harmonic_log_evidence_core(log_w), T, Method::harmonic,
                  0.0, max_w - mean_w > 20.0};
  out.wall_time_s = seconds_since(t0);
  return out;
}

LogEvidence chib_evidence(const ProbitModel& model, const Chain& chain) {
  require_same_model(model, chain, "chib_evidence");
  if (!chain.theta_star) {
    throw std::invalid_argument("chib_evidence: chain has no registered theta_star");
  }
  const auto t0 = Clock::now();
  const Eigen::VectorXd& star = *chain.theta_star;
  const double value =
      chib_log_evidence_core(log_likelihood(star, model), log_prior(star, model),
                             rao_blackwell_logdensity(chain));
  return LogEvidence{value, chain.length(), Method::chib, seconds_since(t0),
                     false};
}

BayesFactorEstimate bridge_same_space_bf(const ProbitModel& model0,
                                         const ProbitModel& model1,
                                         const Chain& chain1, long n) {
  if (model0.p() != model1.p()) {
    throw std::invalid_argument(
        "bridge_same_space_bf: models live on different parameter spaces");
  }
  require_same_model(model1, chain1, "bridge_same_space_bf");
  const long T = clamp_draw_count(n, chain1.length(), "bridge_same_space_bf");
  const auto t0 = Clock::now();
  std::vector<double> terms(static_cast<std::size_t>(T));
  for (long t = 0; t < T; ++t) {
    const Eigen::VectorXd theta = chain1.theta_draws.row(t).transpose();
    terms[static_cast<std::size_t>(t)] =
        log_posterior_unnorm(theta, model0) - log_posterior_unnorm(theta, model1);
  }
  return BayesFactorEstimate{log_mean_exp(terms), Method::bridge, 0, T,
                             seconds_since(t0), true};
}

AlphaChoice make_paper_alpha(const GaussianSpec& gauss0,
                             const GaussianSpec& gauss1,
                             const ConditionalGaussian& omega,
                             double weight_on_model1) {
  if (gauss1.dim() != gauss0.dim() + 1) {
    throw std::invalid_argument(
        "make_paper_alpha: gauss1 must have one more dimension than gauss0");
  }
  if (!(weight_on_model1 > 0.0) || !(weight_on_model1 < 1.0)) {
    throw std::invalid_argument("make_paper_alpha: weight must lie in (0,1)");
  }
  const double log_w1 = std::log(weight_on_model1);
  const double log_w0 = std::log(1.0 - weight_on_model1);
  return [gauss0, gauss1, omega, log_w0, log_w1](const Eigen::VectorXd& point) {
    const int p0 = gauss0.dim();
    const Eigen::VectorXd theta = point.head(p0);
    const double psi = point[p0];
    const double a = log_w1 + mvn_logpdf(point, gauss1);
    const double b = log_w0 + mvn_logpdf(theta, gauss0) + omega.logpdf(psi, theta);
    const std::array<double, 2> parts{a, b};
    return -logsumexp(parts);
  };
}

EmbeddedWork prepare_embedded_work(const ProbitModel& model0,
                                   const ProbitModel& model1,
                                   const ConditionalGaussian& omega,
                                   const Chain& chain0, const Chain* chain1,
                                   RngStream& completion_rng) {
  require_embedded(model0, model1, "prepare_embedded_work");
  require_same_model(model0, chain0, "prepare_embedded_work (chain0)");
  const int p0 = model0.p();
  const int p1 = model1.p();

  EmbeddedWork work;

  const int n0 = chain0.length();
  work.points0.resize(n0, p1);
  work.log_p0_at_0.resize(n0);
  work.log_p1_at_0.resize(n0);
  for (int j = 0; j < n0; ++j) {
    const Eigen::VectorXd theta = chain0.theta_draws.row(j).transpose();
    const double psi = omega.sample(theta, completion_rng);
    Eigen::VectorXd point(p1);
    point.head(p0) = theta;
    point[p0] = psi;
    work.points0.row(j) = point.transpose();
    work.log_p0_at_0[j] =
        log_posterior_unnorm(theta, model0) + omega.logpdf(psi, theta);
    work.log_p1_at_0[j] = log_posterior_unnorm(point, model1);
  }

  if (chain1 != nullptr) {
    require_same_model(model1, *chain1, "prepare_embedded_work (chain1)");
    const int n1 = chain1->length();
    work.points1.resize(n1, p1);
    work.log_p0_at_1.resize(n1);
    work.log_p1_at_1.resize(n1);
    for (int j = 0; j < n1; ++j) {
      const Eigen::VectorXd point = chain1->theta_draws.row(j).transpose();
      const Eigen::VectorXd theta = point.head(p0);
      work.points1.row(j) = point.transpose();
      work.log_p0_at_1[j] =
          log_posterior_unnorm(theta, model0) + omega.logpdf(point[p0], theta);
      work.log_p1_at_1[j] = log_posterior_unnorm(point, model1);
    }
  }
  return work;
}

double extended_bridge_from_work(const EmbeddedWork& work,
                                 const AlphaChoice& log_alpha) {
  const auto n1 = work.log_p0_at_1.size();
  const auto n0 = work.log_p1_at_0.size();
  if (n1 == 0 || n0 == 0) {
    throw std::invalid_argument("extended_bridge_from_work: missing draws");
  }
  std::vector<double> num(static_cast<std::size_t>(n1));
  std::vector<double> den(static_cast<std::size_t>(n0));
  for (Eigen::Index j = 0; j < n1; ++j) {
    num[static_cast<std::size_t>(j)] =
        work.log_p0_at_1[j] + log_alpha(work.points1.row(j).transpose());
  }
  for (Eigen::Index j = 0; j < n0; ++j) {
    den[static_cast<std::size_t>(j)] =
        work.log_p1_at_0[j] + log_alpha(work.points0.row(j).transpose());
  }
  return log_mean_exp(num) - log_mean_exp(den);
}

BayesFactorEstimate bridge_extended_bf(const ProbitModel& model0,
                                       const ProbitModel& model1,
                                       const ConditionalGaussian& omega,
                                       const Chain& chain0, const Chain& chain1,
                                       const AlphaChoice& log_alpha,
                                       RngStream& completion_rng) {
  const auto t0 = Clock::now();
  const EmbeddedWork work = prepare_embedded_work(model0, model1, omega, chain0,
                                                  &chain1, completion_rng);
  return BayesFactorEstimate{extended_bridge_from_work(work, log_alpha),
                             Method::bridge, chain0.length(), chain1.length(),
                             seconds_since(t0), true};
}

OptimalAlphaResult optimal_alpha_from_work(const EmbeddedWork& work,
                                           int iterations,
                                           double initial_log_b01) {
  if (iterations < 1) {
    throw std::invalid_argument("optimal_alpha_from_work: iterations must be >= 1");
  }
  const auto n1 = work.log_p0_at_1.size();
  const auto n0 = work.log_p1_at_0.size();
  if (n1 == 0 || n0 == 0) {
    throw std::invalid_argument("optimal_alpha_from_work: missing draws");
  }
  const double log_n0 = std::log(static_cast<double>(n0));
  const double log_n1 = std::log(static_cast<double>(n1));

  // log alpha(point) = -log( n0 * p~0(point) + n1 * B * p~1(point) )
  const auto log_alpha_at = [&](double log_p0, double log_p1, double log_b) {
    const std::array<double, 2> parts{log_n0 + log_p0, log_n1 + log_b + log_p1};
    return -logsumexp(parts);
  };

  OptimalAlphaResult out;
  out.log_b01 = initial_log_b01;
  std::vector<double> num(static_cast<std::size_t>(n1));
  std::vector<double> den(static_cast<std::size_t>(n0));
  for (int it = 0; it < iterations; ++it) {
    for (Eigen::Index j = 0; j < n1; ++j) {
      num[static_cast<std::size_t>(j)] =
          work.log_p0_at_1[j] +
          log_alpha_at(work.log_p0_at_1[j], work.log_p1_at_1[j], out.log_b01);
    }
    for (Eigen::Index j = 0; j < n0; ++j) {
      den[static_cast<std::size_t>(j)] =
          work.log_p1_at_0[j] +
          log_alpha_at(work.log_p0_at_0[j], work.log_p1_at_0[j], out.log_b01);
    }
    const double next = log_mean_exp(num) - log_mean_exp(den);
    const double delta = std::abs(next - out.log_b01);
    out.log_b01 = next;
    out.iterations_used = it + 1;
    if (delta < 1e-8) {
      out.converged = true;
      break;
    }
  }
  return out;
}

BayesFactorEstimate optimal_alpha_bridge_bf(
    const ProbitModel& model0, const ProbitModel& model1,
    const ConditionalGaussian& omega, const Chain& chain0, const Chain& chain1,
    int iterations, RngStream& completion_rng,
    std::optional<double> initial_log_b01) {
  const auto t0 = Clock::now();
  const EmbeddedWork work = prepare_embedded_work(model0, model1, omega, chain0,
                                                  &chain1, completion_rng);
  const OptimalAlphaResult res =
      optimal_alpha_from_work(work, iterations, initial_log_b01.value_or(0.0));
  return BayesFactorEstimate{res.log_b01,         Method::bridge_opt,
                             chain0.length(),     chain1.length(),
                             seconds_since(t0),   res.converged};
}

double pseudo_ratio_from_work(const EmbeddedWork& work, long n) {
  const long avail = static_cast<long>(work.log_p0_at_0.size());
  const long m = clamp_draw_count(n, static_cast<int>(avail),
                                  "pseudo_ratio_from_work");
  std::vector<double> terms(static_cast<std::size_t>(m));
  for (long j = 0; j < m; ++j) {
    terms[static_cast<std::size_t>(j)] =
        work.log_p1_at_0[j] - work.log_p0_at_0[j];
  }
  // the completed-ratio average estimates m1/m0
  return -log_mean_exp(terms);
}

BayesFactorEstimate pseudo_prior_ratio_bf(const ProbitModel& model0,
                                          const ProbitModel& model1,
                                          const ConditionalGaussian& omega,
                                          const Chain& chain0,
                                          RngStream& completion_rng, long n) {
  const auto t0 = Clock::now();
  const EmbeddedWork work = prepare_embedded_work(model0, model1, omega, chain0,
                                                  nullptr, completion_rng);
  const long used = (n < 0) ? chain0.length() : n;
  return BayesFactorEstimate{pseudo_ratio_from_work(work, n),
                             Method::pseudo_ratio,
                             used,
                             0,
                             seconds_since(t0),
                             true};
}

}  // namespace bfp::estimators
