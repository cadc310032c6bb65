#include "bfp/probit_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bfp/errors.hpp"

namespace bfp {

namespace {

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ull;
  }
  return h;
}

Eigen::MatrixXd spd_inverse(const SpdFactor& f) {
  const int d = f.dim();
  Eigen::MatrixXd inv_lower = f.lower.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(d, d));
  return inv_lower.transpose() * inv_lower;
}

// phi(t) / Phi(t), computed in log space so deep tails stay finite.
double inverse_mills(double t) {
  return std::exp(std_normal_logpdf(t) - std_normal_logcdf(t));
}

}  // namespace

Dataset::Dataset(std::vector<int> y, std::vector<std::string> column_names,
                 Eigen::MatrixXd columns)
    : y_(std::move(y)),
      column_names_(std::move(column_names)),
      columns_(std::move(columns)) {
  if (y_.empty()) {
    throw std::invalid_argument("Dataset: needs at least one observation");
  }
  if (columns_.rows() != static_cast<Eigen::Index>(y_.size())) {
    throw std::invalid_argument("Dataset: column length differs from y length");
  }
  if (columns_.cols() != static_cast<Eigen::Index>(column_names_.size())) {
    throw std::invalid_argument("Dataset: name count differs from column count");
  }
  for (int v : y_) {
    if (v != 0 && v != 1) {
      throw std::invalid_argument("Dataset: responses must be 0 or 1");
    }
  }
  if (!columns_.allFinite()) {
    throw std::invalid_argument("Dataset: covariates contain non-finite values");
  }
  std::set<std::string> seen(column_names_.begin(), column_names_.end());
  if (seen.size() != column_names_.size()) {
    throw std::invalid_argument("Dataset: duplicate column names");
  }
}

int Dataset::column_index(const std::string& name) const {
  auto it = std::find(column_names_.begin(), column_names_.end(), name);
  if (it == column_names_.end()) {
    throw DataError("Dataset: no column named '" + name + "'");
  }
  return static_cast<int>(it - column_names_.begin());
}

Eigen::VectorXd Dataset::column(const std::string& name) const {
  return columns_.col(column_index(name));
}

double ConditionalGaussian::logpdf(double value,
                                   const Eigen::VectorXd& cond) const {
  const double r = (value - mean_given(cond)) / sd;
  return -0.5 * r * r - 0.5 * k_log_2pi - std::log(sd);
}

double ConditionalGaussian::sample(const Eigen::VectorXd& cond,
                                   RngStream& rng) const {
  return mean_given(cond) + sd * rng.normal();
}

ProbitModel::ProbitModel(std::shared_ptr<const Dataset> data,
                         std::vector<std::string> selected_columns,
                         std::optional<double> g)
    : data_(std::move(data)), columns_(std::move(selected_columns)) {
  if (!data_) {
    throw std::invalid_argument("ProbitModel: null dataset");
  }
  if (columns_.empty()) {
    throw std::invalid_argument("ProbitModel: needs at least one covariate");
  }
  const int n = data_->n();
  g_ = g.value_or(static_cast<double>(n));
  if (!(g_ > 0.0)) {
    throw std::invalid_argument("ProbitModel: g must be positive");
  }
  design_.resize(n, static_cast<Eigen::Index>(columns_.size()));
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    design_.col(static_cast<Eigen::Index>(j)) = data_->column(columns_[j]);
  }
  xtx_ = design_.transpose() * design_;
  xtx_factor_ = spd_factorize(xtx_);  // throws if X^T X is not PD

  const Eigen::MatrixXd xtx_inv = spd_inverse(xtx_factor_);
  prior_ = std::make_shared<const GaussianSpec>(
      GaussianSpec::from_moments(Eigen::VectorXd::Zero(p()), g_ * xtx_inv));
  posterior_cov_factor_ = std::make_shared<const SpdFactor>(
      spd_factorize((g_ / (g_ + 1.0)) * xtx_inv));

  std::uint64_t h = 0xCBF29CE484222325ull;
  for (const auto& c : columns_) h = fnv1a(c.data(), c.size(), h);
  h = fnv1a(&g_, sizeof(g_), h);
  h = fnv1a(data_->y().data(), data_->y().size() * sizeof(int), h);
  const double xsum = design_.sum();
  h = fnv1a(&xsum, sizeof(xsum), h);
  std::ostringstream tag;
  for (const auto& c : columns_) tag << c << '+';
  tag << "g=" << g_ << "|n=" << n << "|" << std::hex << h;
  fingerprint_ = tag.str();
}

ProbitModel ProbitModel::with_unit_likelihood(
    std::shared_ptr<const Dataset> data,
    std::vector<std::string> selected_columns, std::optional<double> g) {
  ProbitModel m(std::move(data), std::move(selected_columns), g);
  m.unit_likelihood_ = true;
  m.fingerprint_ += "|unit";
  return m;
}

const MleFit& ProbitModel::mle() const {
  std::call_once(mle_cache_->once, [this] {
    try {
      mle_cache_->fit = fit_mle(*this);
    } catch (...) {
      mle_cache_->error = std::current_exception();
    }
  });
  if (mle_cache_->error) {
    std::rethrow_exception(mle_cache_->error);
  }
  return *mle_cache_->fit;
}

double log_likelihood(const Eigen::VectorXd& theta, const ProbitModel& model) {
  if (theta.size() != model.p()) {
    throw std::invalid_argument("log_likelihood: theta dimension mismatch");
  }
  if (model.unit_likelihood()) {
    return 0.0;
  }
  const Eigen::VectorXd t = model.design() * theta;
  const auto& y = model.data()->y();
  double s = 0.0;
  for (int i = 0; i < model.n(); ++i) {
    s += std_normal_logcdf(y[static_cast<std::size_t>(i)] ? t[i] : -t[i]);
  }
  return s;
}

double log_prior(const Eigen::VectorXd& theta, const ProbitModel& model) {
  if (theta.size() != model.p()) {
    throw std::invalid_argument("log_prior: theta dimension mismatch");
  }
  const double quad = theta.dot(model.xtx() * theta);
  const double p = model.p();
  return -0.5 * p * (k_log_2pi + std::log(model.g())) +
         0.5 * model.log_det_xtx() - quad / (2.0 * model.g());
}

double log_posterior_unnorm(const Eigen::VectorXd& theta,
                            const ProbitModel& model) {
  return log_likelihood(theta, model) + log_prior(theta, model);
}

double completed_log_likelihood(const Eigen::VectorXd& theta,
                                const Eigen::VectorXd& z,
                                const ProbitModel& model) {
  if (theta.size() != model.p()) {
    throw std::invalid_argument("completed_log_likelihood: theta dimension mismatch");
  }
  if (z.size() != model.n()) {
    throw std::invalid_argument("completed_log_likelihood: z dimension mismatch");
  }
  const auto& y = model.data()->y();
  for (int i = 0; i < model.n(); ++i) {
    const bool positive = z[i] > 0.0;
    if (positive != (y[static_cast<std::size_t>(i)] == 1)) {
      return -std::numeric_limits<double>::infinity();
    }
  }
  const double rss = (z - model.design() * theta).squaredNorm();
  return -0.5 * model.n() * k_log_2pi - 0.5 * rss;
}

MleFit fit_mle(const ProbitModel& model) {
  if (model.unit_likelihood()) {
    throw FitError("fit_mle: unit-likelihood test models have no MLE");
  }
  const Eigen::MatrixXd& X = model.design();
  const auto& y = model.data()->y();
  const int n = model.n();
  const int p = model.p();

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(p);
  double ll = log_likelihood(theta, model);
  Eigen::VectorXd score(n), weight(n);

  constexpr int max_iter = 50;
  constexpr double grad_tol = 1e-8;
  for (int iter = 0; iter < max_iter; ++iter) {
    const Eigen::VectorXd t = X * theta;
    for (int i = 0; i < n; ++i) {
      if (y[static_cast<std::size_t>(i)]) {
        const double lam = inverse_mills(t[i]);
        score[i] = lam;
        weight[i] = lam * (lam + t[i]);
      } else {
        const double lam = inverse_mills(-t[i]);
        score[i] = -lam;
        weight[i] = lam * (lam - t[i]);
      }
    }
    const Eigen::VectorXd grad = X.transpose() * score;
    if (grad.lpNorm<Eigen::Infinity>() < grad_tol) {
      const Eigen::MatrixXd info = X.transpose() * weight.asDiagonal() * X;
      return MleFit{theta, spd_factorize(spd_inverse(spd_factorize(info))),
                    iter, true};
    }
    const Eigen::MatrixXd info = X.transpose() * weight.asDiagonal() * X;
    const Eigen::VectorXd step = spd_factorize(info).solve(grad);

    double scale = 1.0;
    bool improved = false;
    for (int h = 0; h < 30; ++h) {
      const Eigen::VectorXd cand = theta + scale * step;
      const double cand_ll = log_likelihood(cand, model);
      if (cand_ll > ll) {
        theta = cand;
        ll = cand_ll;
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) {
      std::ostringstream msg;
      msg << "fit_mle: line search stalled at iteration " << iter
          << ", last iterate " << theta.transpose();
      throw FitError(msg.str());
    }
    if (theta.norm() > 1e3) {
      throw FitError(
          "fit_mle: iterates diverged (quasi-separation suspected), |theta| > 1e3");
    }
  }
  std::ostringstream msg;
  msg << "fit_mle: no convergence in " << max_iter << " iterations, last iterate "
      << theta.transpose();
  throw FitError(msg.str());
}

GaussianSpec asymptotic_gaussian(const MleFit& fit) {
  if (!fit.converged) {
    throw std::invalid_argument("asymptotic_gaussian: fit did not converge");
  }
  return GaussianSpec(fit.theta_hat, fit.cov_hat);
}

ConditionalGaussian conditional_gaussian(const GaussianSpec& joint,
                                         int target_index) {
  const int d = joint.dim();
  if (d < 2) {
    throw std::invalid_argument("conditional_gaussian: joint must have dim >= 2");
  }
  if (target_index < 0 || target_index >= d) {
    throw std::out_of_range("conditional_gaussian: target index out of range");
  }
  const Eigen::MatrixXd cov = joint.cov_factor.reconstruct();

  std::vector<int> rest;
  rest.reserve(static_cast<std::size_t>(d) - 1);
  for (int i = 0; i < d; ++i) {
    if (i != target_index) rest.push_back(i);
  }
  const int m = d - 1;
  Eigen::MatrixXd cov_rr(m, m);
  Eigen::VectorXd cov_rt(m), mu_rest(m);
  for (int a = 0; a < m; ++a) {
    mu_rest[a] = joint.mean[rest[static_cast<std::size_t>(a)]];
    cov_rt[a] = cov(rest[static_cast<std::size_t>(a)], target_index);
    for (int b = 0; b < m; ++b) {
      cov_rr(a, b) = cov(rest[static_cast<std::size_t>(a)],
                         rest[static_cast<std::size_t>(b)]);
    }
  }
  const Eigen::VectorXd slope = spd_factorize(cov_rr).solve(cov_rt);
  const double var =
      cov(target_index, target_index) - slope.dot(cov_rt);
  if (!(var > 0.0)) {
    throw std::invalid_argument("conditional_gaussian: Schur complement not positive");
  }
  ConditionalGaussian out;
  out.slope = slope;
  out.intercept = joint.mean[target_index] - slope.dot(mu_rest);
  out.sd = std::sqrt(var);
  return out;
}

}  // namespace bfp
