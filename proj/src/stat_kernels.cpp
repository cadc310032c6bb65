#include "bfp/stat_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace bfp {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      key_(mix64(mix64(master_seed) ^ mix64(stream_id * 0xD1342543DE82EF95ull))) {}

std::uint64_t RngStream::next_u64() {
  std::uint64_t z = key_ + (counter_++) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double RngStream::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

double RngStream::exponential(double rate) {
  return -std::log(uniform()) / rate;
}

Eigen::VectorXd SpdFactor::solve(const Eigen::VectorXd& b) const {
  Eigen::VectorXd y = lower.triangularView<Eigen::Lower>().solve(b);
  return lower.transpose().triangularView<Eigen::Upper>().solve(y);
}

Eigen::VectorXd SpdFactor::forward_solve(const Eigen::VectorXd& b) const {
  return lower.triangularView<Eigen::Lower>().solve(b);
}

SpdFactor spd_factorize(const Eigen::MatrixXd& m) {
  const auto d = m.rows();
  if (d == 0 || m.cols() != d) {
    throw std::invalid_argument("spd_factorize: matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("spd_factorize: matrix is not symmetric");
  }
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(d, d);
  double log_det = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double pivot = m(j, j) - L.row(j).head(j).squaredNorm();
    if (!(pivot > 0.0) || !std::isfinite(pivot)) {
      char buf[96];
      std::snprintf(buf, sizeof(buf),
                    "spd_factorize: matrix is not positive definite at pivot %ld",
                    static_cast<long>(j + 1));
      throw FactorizationError(static_cast<int>(j + 1), buf);
    }
    L(j, j) = std::sqrt(pivot);
    log_det += 2.0 * std::log(L(j, j));
    for (Eigen::Index i = j + 1; i < d; ++i) {
      L(i, j) = (m(i, j) - L.row(i).head(j).dot(L.row(j).head(j))) / L(j, j);
    }
  }
  return SpdFactor{std::move(L), log_det};
}

GaussianSpec::GaussianSpec(Eigen::VectorXd mean_in, SpdFactor cov_in)
    : mean(std::move(mean_in)), cov_factor(std::move(cov_in)) {
  if (mean.size() != cov_factor.dim()) {
    throw std::invalid_argument("GaussianSpec: mean/covariance dimension mismatch");
  }
}

GaussianSpec GaussianSpec::from_moments(Eigen::VectorXd mean,
                                        const Eigen::MatrixXd& cov) {
  return GaussianSpec(std::move(mean), spd_factorize(cov));
}

double std_normal_cdf(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("std_normal_cdf: non-finite input");
  }
  return 0.5 * std::erfc(-x * M_SQRT1_2);
}

double std_normal_logcdf(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("std_normal_logcdf: non-finite input");
  }
  if (x > 0.0) {
    // log(1 - Phi(-x)) keeps full precision where Phi(x) is close to 1
    return std::log1p(-0.5 * std::erfc(x * M_SQRT1_2));
  }
  if (x >= -37.0) {
    return std::log(0.5 * std::erfc(-x * M_SQRT1_2));
  }
  // erfc underflows past ~ -37.5; use the Mills-ratio asymptotic expansion
  //   log Phi(x) = log phi(x) - log(-x) + log(1 - 1/x^2 + 3/x^4 - ...)
  const double inv2 = 1.0 / (x * x);
  double term = 1.0;
  double series = 0.0;
  for (int k = 1; k <= 12; ++k) {
    term *= -(2.0 * k - 1.0) * inv2;
    if (std::abs(term) < 1e-20) break;
    series += term;
  }
  return std_normal_logpdf(x) - std::log(-x) + std::log1p(series);
}

Eigen::VectorXd mvn_sample(const GaussianSpec& spec, RngStream& rng) {
  Eigen::VectorXd eps(spec.dim());
  for (int i = 0; i < spec.dim(); ++i) {
    eps[i] = rng.normal();
  }
  return spec.mean + spec.cov_factor.lower * eps;
}

double mvn_logpdf(const Eigen::VectorXd& x, const GaussianSpec& spec) {
  if (x.size() != spec.mean.size()) {
    throw std::invalid_argument("mvn_logpdf: dimension mismatch");
  }
  const Eigen::VectorXd w = spec.cov_factor.forward_solve(x - spec.mean);
  return -0.5 * (spec.dim() * k_log_2pi + spec.cov_factor.log_det + w.squaredNorm());
}

double truncated_normal_sample(double mu, double sigma, TruncationSide side,
                               RngStream& rng) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("truncated_normal_sample: sigma must be positive");
  }
  const bool right = (side == TruncationSide::right_of_zero);
  // standardized lower cut for the positive-side draw
  const double alpha = right ? (-mu / sigma) : (mu / sigma);
  double x;
  if (alpha <= 0.45) {
    do {
      x = rng.normal();
    } while (!(x > alpha));
  } else {
    // translated exponential proposal (uniformly bounded acceptance rate)
    const double lambda = 0.5 * (alpha + std::sqrt(alpha * alpha + 4.0));
    for (;;) {
      x = alpha + rng.exponential(lambda);
      const double d = x - lambda;
      if (rng.uniform() <= std::exp(-0.5 * d * d)) break;
    }
  }
  return right ? (mu + sigma * x) : (mu - sigma * x);
}

double logsumexp(std::span<const double> v) {
  if (v.empty()) {
    throw std::invalid_argument("logsumexp: empty input");
  }
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) {
    return m;  // all -inf (or a stray +inf/nan propagates)
  }
  double s = 0.0;
  for (double x : v) {
    s += std::exp(x - m);
  }
  return m + std::log(s);
}

}  // namespace bfp
