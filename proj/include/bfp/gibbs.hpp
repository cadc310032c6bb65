#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bfp/probit_model.hpp"

namespace bfp {

// Gaussian full conditional of the regression coefficients given latents.
struct FullConditional {
  Eigen::VectorXd mean;
  std::shared_ptr<const SpdFactor> cov_factor;  // constant across iterations
};

struct ChainMeta {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
  int length = 0;
  Eigen::VectorXd start;
  std::string model_fingerprint;
};

// Stored draws of a data-augmentation run. When a reference point theta_star
// is registered, every iteration's full-conditional log-density at that point
// is cached so the marginal posterior density can be Rao-Blackwellized
// without keeping any latents.
struct Chain {
  Eigen::MatrixXd theta_draws;            // T x p
  std::vector<double> rb_logdensities;    // length T when theta_star is set
  std::optional<Eigen::VectorXd> theta_star;
  ChainMeta meta;

  int length() const { return static_cast<int>(theta_draws.rows()); }
  int dim() const { return static_cast<int>(theta_draws.cols()); }
};

// One draw of the latent regression variables: z_i from the unit-variance
// normal at x_i' theta, truncated to the positive side when y_i = 1 and the
// non-positive side otherwise.
Eigen::VectorXd sample_latents(const Eigen::VectorXd& theta,
                               const ProbitModel& model, RngStream& rng);

FullConditional theta_full_conditional(const Eigen::VectorXd& z,
                                       const ProbitModel& model);

// Alternates latent and coefficient draws for T cycles, starting from the
// maximum-likelihood estimate; no burn-in is discarded. Registering
// theta_star fills rb_logdensities.
Chain gibbs_run(const ProbitModel& model, int length, RngStream& rng,
                const std::optional<Eigen::VectorXd>& theta_star = std::nullopt);

// log of (1/T) sum_t pi(theta_star | y, z_t); requires a registered
// theta_star.
double rao_blackwell_logdensity(const Chain& chain);

// Plain-text dump, one draw per record: header "iter,theta_1,...,theta_p"
// followed by comma-separated decimal values.
void dump_chain_csv(const Chain& chain, std::ostream& os);

}  // namespace bfp
