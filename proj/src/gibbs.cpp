#include "bfp/gibbs.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "bfp/stat_kernels.hpp"

namespace bfp {

Eigen::VectorXd sample_latents(const Eigen::VectorXd& theta,
                               const ProbitModel& model, RngStream& rng) {
  if (theta.size() != model.p()) {
    throw std::invalid_argument("sample_latents: theta dimension mismatch");
  }
  const Eigen::VectorXd t = model.design() * theta;
  const auto& y = model.data()->y();
  Eigen::VectorXd z(model.n());
  for (int i = 0; i < model.n(); ++i) {
    const auto side = y[static_cast<std::size_t>(i)]
                          ? TruncationSide::right_of_zero
                          : TruncationSide::left_of_zero;
    z[i] = truncated_normal_sample(t[i], 1.0, side, rng);
  }
  return z;
}

FullConditional theta_full_conditional(const Eigen::VectorXd& z,
                                       const ProbitModel& model) {
  if (z.size() != model.n()) {
    throw std::invalid_argument("theta_full_conditional: z dimension mismatch");
  }
  const double shrink = model.g() / (model.g() + 1.0);
  Eigen::VectorXd mean =
      shrink * model.xtx_factor().solve(model.design().transpose() * z);
  return FullConditional{std::move(mean), model.posterior_cov_factor()};
}

Chain gibbs_run(const ProbitModel& model, int length, RngStream& rng,
                const std::optional<Eigen::VectorXd>& theta_star) {
  if (length < 1) {
    throw std::invalid_argument("gibbs_run: length must be >= 1");
  }
  if (theta_star && theta_star->size() != model.p()) {
    throw std::invalid_argument("gibbs_run: theta_star dimension mismatch");
  }
  const int n = model.n();
  const int p = model.p();
  const auto& y = model.data()->y();
  const Eigen::MatrixXd& X = model.design();
  const SpdFactor& post_cov = *model.posterior_cov_factor();
  const double shrink = model.g() / (model.g() + 1.0);

  Chain chain;
  chain.theta_draws.resize(length, p);
  chain.theta_star = theta_star;
  chain.meta.master_seed = rng.master_seed();
  chain.meta.stream_id = rng.stream_id();
  chain.meta.length = length;
  chain.meta.model_fingerprint = model.fingerprint();
  if (theta_star) {
    chain.rb_logdensities.resize(static_cast<std::size_t>(length));
  }

  Eigen::VectorXd theta = model.mle().theta_hat;  // propagates fit errors
  chain.meta.start = theta;

  Eigen::VectorXd t(n), z(n), mean(p), eps(p);
  const double rb_const = -0.5 * (p * k_log_2pi + post_cov.log_det);

  for (int iter = 0; iter < length; ++iter) {
    t.noalias() = X * theta;
    for (int i = 0; i < n; ++i) {
      const bool pos = y[static_cast<std::size_t>(i)] == 1;
      z[i] = truncated_normal_sample(
          t[i], 1.0,
          pos ? TruncationSide::right_of_zero : TruncationSide::left_of_zero,
          rng);
      if ((z[i] > 0.0) != pos) {
        throw std::logic_error("gibbs_run: latent sign violates the response");
      }
    }
    mean.noalias() = shrink * model.xtx_factor().solve(X.transpose() * z);
    if (theta_star) {
      const Eigen::VectorXd w = post_cov.forward_solve(*theta_star - mean);
      chain.rb_logdensities[static_cast<std::size_t>(iter)] =
          rb_const - 0.5 * w.squaredNorm();
    }
    for (int j = 0; j < p; ++j) {
      eps[j] = rng.normal();
    }
    theta = mean + post_cov.lower * eps;
    chain.theta_draws.row(iter) = theta.transpose();
  }
  return chain;
}

double rao_blackwell_logdensity(const Chain& chain) {
  if (!chain.theta_star || chain.rb_logdensities.empty()) {
    throw std::invalid_argument(
        "rao_blackwell_logdensity: chain has no registered theta_star");
  }
  return log_mean_exp(chain.rb_logdensities);
}

void dump_chain_csv(const Chain& chain, std::ostream& os) {
  os << "iter";
  for (int j = 1; j <= chain.dim(); ++j) {
    os << ",theta_" << j;
  }
  os << '\n';
  char buf[32];
  for (int t = 0; t < chain.length(); ++t) {
    os << (t + 1);
    for (int j = 0; j < chain.dim(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", chain.theta_draws(t, j));
      os << ',' << buf;
    }
    os << '\n';
  }
}

}  // namespace bfp
