#pragma once

#include <Eigen/Dense>
#include <span>

#include "bfp/errors.hpp"
#include "bfp/rng.hpp"

namespace bfp {

inline constexpr double k_log_2pi = 1.837877066409345483560659472811;

// Cholesky factorization of a symmetric positive definite matrix together
// with the log-determinant of the original matrix.
struct SpdFactor {
  Eigen::MatrixXd lower;  // L with L * L^T = M, strictly positive diagonal
  double log_det = 0.0;   // log |M|

  int dim() const { return static_cast<int>(lower.rows()); }

  // Solves M x = b through the two triangular systems.
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

  // Solves L y = b (whitening transform).
  Eigen::VectorXd forward_solve(const Eigen::VectorXd& b) const;

  Eigen::MatrixXd reconstruct() const { return lower * lower.transpose(); }
};

// Throws FactorizationError (with the 1-based pivot index) if m is not
// positive definite, std::invalid_argument if it is not symmetric.
SpdFactor spd_factorize(const Eigen::MatrixXd& m);

// Gaussian distribution held as mean plus covariance factorization. Used
// for priors, proposals, harmonic-mean weight densities and asymptotic
// approximations alike.
struct GaussianSpec {
  Eigen::VectorXd mean;
  SpdFactor cov_factor;

  GaussianSpec(Eigen::VectorXd mean_in, SpdFactor cov_in);
  static GaussianSpec from_moments(Eigen::VectorXd mean,
                                   const Eigen::MatrixXd& cov);

  int dim() const { return static_cast<int>(mean.size()); }
};

double std_normal_cdf(double x);

// log Phi(x), finite for every finite x. Uses erfc until it would leave the
// normal double range and an asymptotic tail expansion beyond; relative
// accuracy is ~1e-14 on the erfc branch and ~1e-15 on the series branch.
double std_normal_logcdf(double x);

inline double std_normal_logpdf(double x) {
  return -0.5 * x * x - 0.5 * k_log_2pi;
}

Eigen::VectorXd mvn_sample(const GaussianSpec& spec, RngStream& rng);

double mvn_logpdf(const Eigen::VectorXd& x, const GaussianSpec& spec);

// Side of zero on which a one-sided truncated normal draw lives.
// right_of_zero draws from N(mu, sigma^2) conditioned on being > 0,
// left_of_zero conditioned on being <= 0.
enum class TruncationSide { left_of_zero, right_of_zero };

// Rejection sampler that stays efficient arbitrarily deep in the tail:
// plain rejection while the standardized cut is below 0.45, a translated
// exponential proposal beyond it.
double truncated_normal_sample(double mu, double sigma, TruncationSide side,
                               RngStream& rng);

// log sum_i exp(v_i), max-shifted. Throws std::invalid_argument on empty
// input; tolerates -inf entries.
double logsumexp(std::span<const double> v);

inline double log_mean_exp(std::span<const double> v) {
  return logsumexp(v) - std::log(static_cast<double>(v.size()));
}

}  // namespace bfp
