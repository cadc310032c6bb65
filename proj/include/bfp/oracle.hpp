#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "bfp/probit_model.hpp"

namespace bfp::oracle {

enum class GridCenter { prior_mean, mle };

struct QuadratureSpec {
  int points_per_dim = 101;     // odd, >= 21
  double half_width_sds = 8.0;  // grid extent in whitened standard deviations
  GridCenter center = GridCenter::mle;
  int jobs = 0;  // 0 -> hardware concurrency; result is identical for any value
  bool self_check = true;  // re-integrate at 2*ppd-1 and compare
};

// Deterministic tensor-grid trapezoid integration of exp(log_f) over
// center + L * [-hw, hw]^d, d <= 3. Node evaluation is partitioned into
// fixed blocks reduced in index order, so the result is bit-stable for any
// worker count. Returns log of the integral; fills mean_out (normalized
// first moment of the integrand) when requested.
double log_integral_whitened(
    const std::function<double(const Eigen::VectorXd&)>& log_f,
    const Eigen::VectorXd& center, const SpdFactor& whiten,
    const QuadratureSpec& spec, Eigen::VectorXd* mean_out = nullptr);

// Ground-truth log evidence by brute-force integration of
// exp(log_likelihood + log_prior); whitening uses the prior covariance
// factor. Throws QuadratureAccuracyError if grid doubling moves the result
// by 1e-5 or more.
double quadrature_log_evidence(const ProbitModel& model,
                               const QuadratureSpec& spec = {});

Eigen::VectorXd quadrature_posterior_mean(const ProbitModel& model,
                                          const QuadratureSpec& spec = {});

}  // namespace bfp::oracle
