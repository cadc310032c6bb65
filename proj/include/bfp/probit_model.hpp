#pragma once

#include <Eigen/Dense>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "bfp/stat_kernels.hpp"

namespace bfp {

// Binary responses plus named covariate columns. Immutable after
// construction and safe to share across threads.
class Dataset {
 public:
  Dataset(std::vector<int> y, std::vector<std::string> column_names,
          Eigen::MatrixXd columns);

  int n() const { return static_cast<int>(y_.size()); }
  const std::vector<int>& y() const { return y_; }
  const std::vector<std::string>& column_names() const { return column_names_; }
  const Eigen::MatrixXd& columns() const { return columns_; }

  // Throws DataError naming the column if absent.
  int column_index(const std::string& name) const;
  Eigen::VectorXd column(const std::string& name) const;

 private:
  std::vector<int> y_;
  std::vector<std::string> column_names_;
  Eigen::MatrixXd columns_;  // n x k, column j named column_names_[j]
};

struct MleFit {
  Eigen::VectorXd theta_hat;
  SpdFactor cov_hat;  // inverse observed information at the optimum
  int iterations = 0;
  bool converged = false;
};

// One-dimensional Gaussian conditional of a joint Gaussian: the law of one
// coordinate given all the others.
struct ConditionalGaussian {
  Eigen::VectorXd slope;
  double intercept = 0.0;
  double sd = 1.0;

  double mean_given(const Eigen::VectorXd& cond) const {
    return intercept + slope.dot(cond);
  }
  double logpdf(double value, const Eigen::VectorXd& cond) const;
  double sample(const Eigen::VectorXd& cond, RngStream& rng) const;
};

// Probit regression on a covariate subset with the scaled-inverse-XtX
// Gaussian prior N(0, g (X^T X)^{-1}). No intercept column. Immutable and
// shareable; the maximum-likelihood fit is computed once on first use.
class ProbitModel {
 public:
  ProbitModel(std::shared_ptr<const Dataset> data,
              std::vector<std::string> selected_columns,
              std::optional<double> g = std::nullopt);

  // Test hook: identical model whose likelihood is identically one, so the
  // evidence equals the prior normalization.
  static ProbitModel with_unit_likelihood(
      std::shared_ptr<const Dataset> data,
      std::vector<std::string> selected_columns,
      std::optional<double> g = std::nullopt);

  int n() const { return static_cast<int>(design_.rows()); }
  int p() const { return static_cast<int>(design_.cols()); }
  double g() const { return g_; }
  bool unit_likelihood() const { return unit_likelihood_; }

  const std::shared_ptr<const Dataset>& data() const { return data_; }
  const std::vector<std::string>& selected_columns() const { return columns_; }
  const Eigen::MatrixXd& design() const { return design_; }
  const Eigen::MatrixXd& xtx() const { return xtx_; }
  const SpdFactor& xtx_factor() const { return xtx_factor_; }
  double log_det_xtx() const { return xtx_factor_.log_det; }

  const GaussianSpec& prior() const { return *prior_; }

  // Covariance factor of the latent-regression full conditional,
  // chol( g/(g+1) * (X^T X)^{-1} ); shared so per-draw cost stays O(np+p^2).
  const std::shared_ptr<const SpdFactor>& posterior_cov_factor() const {
    return posterior_cov_factor_;
  }

  // Cached Newton fit; throws FitError on separation or non-convergence.
  const MleFit& mle() const;

  // Cheap provenance tag: columns, g and a checksum of the data.
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  std::shared_ptr<const Dataset> data_;
  std::vector<std::string> columns_;
  double g_ = 0.0;
  bool unit_likelihood_ = false;
  Eigen::MatrixXd design_;
  Eigen::MatrixXd xtx_;
  SpdFactor xtx_factor_;
  std::shared_ptr<const GaussianSpec> prior_;
  std::shared_ptr<const SpdFactor> posterior_cov_factor_;
  std::string fingerprint_;

  struct MleCache {
    std::once_flag once;
    std::optional<MleFit> fit;
    std::exception_ptr error;
  };
  std::shared_ptr<MleCache> mle_cache_ = std::make_shared<MleCache>();
};

double log_likelihood(const Eigen::VectorXd& theta, const ProbitModel& model);
double log_prior(const Eigen::VectorXd& theta, const ProbitModel& model);
double log_posterior_unnorm(const Eigen::VectorXd& theta,
                            const ProbitModel& model);

// Joint log-density of responses and latent variables. Returns -inf if the
// sign pattern of z contradicts y.
double completed_log_likelihood(const Eigen::VectorXd& theta,
                                const Eigen::VectorXd& z,
                                const ProbitModel& model);

// Newton iterations with analytic gradient/Hessian and step-halving line
// search, started at zero. Throws FitError on divergence (quasi-separation)
// or when 50 iterations do not reach a 1e-8 gradient norm.
MleFit fit_mle(const ProbitModel& model);

GaussianSpec asymptotic_gaussian(const MleFit& fit);

// Conditional law of coordinate `target_index` given the remaining
// coordinates (kept in their original order).
ConditionalGaussian conditional_gaussian(const GaussianSpec& joint,
                                         int target_index);

}  // namespace bfp
