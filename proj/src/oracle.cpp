#include "bfp/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <span>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>
#include <vector>

#include "bfp/errors.hpp"
#include "bfp/stat_kernels.hpp"

namespace bfp::oracle {

namespace {

constexpr long k_block = 4096;  // fixed node block; independent of worker count

struct BlockResult {
  double lse = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd moment;  // sum exp(v_i - lse) * theta_i
};

void validate(const QuadratureSpec& spec, int dim) {
  if (dim > 3) {
    throw std::invalid_argument("quadrature: only dimensions up to 3 are supported");
  }
  if (spec.points_per_dim < 21 || spec.points_per_dim % 2 == 0) {
    throw std::invalid_argument("quadrature: points_per_dim must be odd and >= 21");
  }
  if (!(spec.half_width_sds >= 6.0)) {
    throw std::invalid_argument("quadrature: half_width_sds must be >= 6");
  }
}

double run_grid(const std::function<double(const Eigen::VectorXd&)>& log_f,
                const Eigen::VectorXd& center, const SpdFactor& whiten,
                int ppd, double hw, int jobs, Eigen::VectorXd* mean_out) {
  const int d = static_cast<int>(center.size());
  const double h = 2.0 * hw / (ppd - 1);
  long total = 1;
  for (int k = 0; k < d; ++k) total *= ppd;

  const long n_blocks = (total + k_block - 1) / k_block;
  std::vector<BlockResult> blocks(static_cast<std::size_t>(n_blocks));

  int workers = jobs > 0 ? jobs
                         : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (workers > n_blocks) workers = static_cast<int>(n_blocks);

  std::atomic<long> next_block{0};
  const bool want_mean = mean_out != nullptr;

  auto worker = [&] {
    Eigen::VectorXd u(d), theta(d);
    std::vector<double> vals(static_cast<std::size_t>(k_block));
    Eigen::MatrixXd thetas(want_mean ? k_block : 0, want_mean ? d : 0);
    for (;;) {
      const long b = next_block.fetch_add(1);
      if (b >= n_blocks) break;
      const long begin = b * k_block;
      const long end = std::min(begin + k_block, total);
      const long m = end - begin;
      for (long idx = begin; idx < end; ++idx) {
        long rem = idx;
        double log_w = 0.0;
        for (int k = 0; k < d; ++k) {
          const int ik = static_cast<int>(rem % ppd);
          rem /= ppd;
          u[k] = -hw + h * ik;
          log_w += std::log((ik == 0 || ik == ppd - 1) ? 0.5 * h : h);
        }
        theta = center + whiten.lower * u;
        vals[static_cast<std::size_t>(idx - begin)] = log_f(theta) + log_w;
        if (want_mean) thetas.row(idx - begin) = theta.transpose();
      }
      BlockResult& out = blocks[static_cast<std::size_t>(b)];
      out.lse = logsumexp(std::span<const double>(vals.data(),
                                                  static_cast<std::size_t>(m)));
      if (want_mean) {
        out.moment = Eigen::VectorXd::Zero(d);
        if (std::isfinite(out.lse)) {
          for (long i = 0; i < m; ++i) {
            out.moment +=
                std::exp(vals[static_cast<std::size_t>(i)] - out.lse) *
                thetas.row(i).transpose();
          }
        }
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // deterministic reduction in block-index order
  std::vector<double> block_lse(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) block_lse[b] = blocks[b].lse;
  const double total_lse = logsumexp(block_lse);

  if (want_mean) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    if (std::isfinite(total_lse)) {
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (std::isfinite(blocks[b].lse)) {
          mean += std::exp(blocks[b].lse - total_lse) * blocks[b].moment;
        }
      }
    }
    *mean_out = mean;
  }
  // log |L| converts the whitened integral back to theta space
  double log_det_l = 0.0;
  for (int k = 0; k < d; ++k) log_det_l += std::log(whiten.lower(k, k));
  return total_lse + log_det_l;
}

}  // namespace

double log_integral_whitened(
    const std::function<double(const Eigen::VectorXd&)>& log_f,
    const Eigen::VectorXd& center, const SpdFactor& whiten,
    const QuadratureSpec& spec, Eigen::VectorXd* mean_out) {
  validate(spec, static_cast<int>(center.size()));
  Eigen::VectorXd mean_coarse;
  const double coarse =
      run_grid(log_f, center, whiten, spec.points_per_dim, spec.half_width_sds,
               spec.jobs, mean_out ? &mean_coarse : nullptr);
  if (!spec.self_check) {
    if (mean_out) *mean_out = mean_coarse;
    return coarse;
  }
  Eigen::VectorXd mean_fine;
  const int fine_ppd = 2 * spec.points_per_dim - 1;
  const double fine =
      run_grid(log_f, center, whiten, fine_ppd, spec.half_width_sds, spec.jobs,
               mean_out ? &mean_fine : nullptr);
  double drift = std::abs(fine - coarse);
  if (mean_out) {
    drift = std::max(drift, (mean_fine - mean_coarse).cwiseAbs().maxCoeff());
  }
  if (!(drift < 1e-5)) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "quadrature self-check failed: ppd=%d gives %.12g, ppd=%d "
                  "gives %.12g (drift %.3g)",
                  spec.points_per_dim, coarse, fine_ppd, fine, drift);
    throw QuadratureAccuracyError(coarse, fine, buf);
  }
  if (mean_out) *mean_out = mean_fine;
  return fine;
}

namespace {

double probit_quadrature(const ProbitModel& model, const QuadratureSpec& spec,
                         Eigen::VectorXd* mean_out) {
  const Eigen::VectorXd center = spec.center == GridCenter::mle
                                     ? model.mle().theta_hat
                                     : Eigen::VectorXd::Zero(model.p());
  const auto log_f = [&model](const Eigen::VectorXd& theta) {
    return log_posterior_unnorm(theta, model);
  };
  return log_integral_whitened(log_f, center, model.prior().cov_factor, spec,
                               mean_out);
}

}  // namespace

double quadrature_log_evidence(const ProbitModel& model,
                               const QuadratureSpec& spec) {
  return probit_quadrature(model, spec, nullptr);
}

Eigen::VectorXd quadrature_posterior_mean(const ProbitModel& model,
                                          const QuadratureSpec& spec) {
  Eigen::VectorXd mean;
  probit_quadrature(model, spec, &mean);
  return mean;
}

}  // namespace bfp::oracle
