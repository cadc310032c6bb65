#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "bfp/errors.hpp"
#include "bfp/stat_kernels.hpp"
#include "reference_values.hpp"

using namespace bfp;

TEST_CASE("std_normal_cdf matches high-precision references") {
  CHECK(std_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(std_normal_cdf(1.959964) - refvals::cdf_at_1959964) < 1e-15);
  CHECK(std::abs(std_normal_cdf(1.959964) - 0.975) < 1e-6);
  // the plain cdf is allowed to underflow to 0 deep in the tail
  CHECK(std_normal_cdf(-40.0) >= 0.0);
  CHECK(std_normal_cdf(-40.0) < 1e-300);
  CHECK_THROWS_AS(std_normal_cdf(std::numeric_limits<double>::quiet_NaN()),
                  std::domain_error);
  CHECK_THROWS_AS(std_normal_cdf(std::numeric_limits<double>::infinity()),
                  std::domain_error);
}

TEST_CASE("std_normal_cdf is monotone") {
  double prev = 0.0;
  for (double x = -45.0; x <= 45.0; x += 0.37) {
    const double v = std_normal_cdf(x);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("std_normal_logcdf matches references and never hits -inf") {
  CHECK(std_normal_logcdf(0.0) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(std::abs(std_normal_logcdf(-10.0) - refvals::logcdf_at_m10) < 1e-10);
  CHECK(std::abs(std_normal_logcdf(-10.0) - (-53.23129)) < 1e-4);
  CHECK(std::abs(std_normal_logcdf(5.0) - refvals::logcdf_at_p5) < 1e-12);
  for (double x : {-500.0, -80.0, -40.0, -5.0, 0.0, 5.0, 40.0}) {
    CHECK(std::isfinite(std_normal_logcdf(x)));
  }
  CHECK_THROWS_AS(std_normal_logcdf(std::numeric_limits<double>::quiet_NaN()),
                  std::domain_error);
}

TEST_CASE("std_normal_logcdf tail relative accuracy vs 50-digit table") {
  for (std::size_t i = 0; i < refvals::logcdf_tail_n; ++i) {
    const double got = std_normal_logcdf(refvals::logcdf_tail_x[i]);
    const double want = refvals::logcdf_tail_val[i];
    CHECK(std::abs(got - want) / std::abs(want) < 1e-9);
  }
}

TEST_CASE("logcdf of x and -x reconstructs the product log") {
  for (double x : {-4.0, -2.0, -0.5, 0.0, 0.7, 3.0}) {
    const double lhs = std_normal_logcdf(x) + std_normal_logcdf(-x);
    const double rhs = std::log(std_normal_cdf(x) * std_normal_cdf(-x));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(std::exp(std_normal_logcdf(x)) ==
          doctest::Approx(std_normal_cdf(x)).epsilon(1e-12));
  }
}

TEST_CASE("spd_factorize on diagonal and identity input") {
  const SpdFactor id = spd_factorize(Eigen::MatrixXd::Identity(3, 3));
  CHECK((id.lower - Eigen::MatrixXd::Identity(3, 3)).norm() == 0.0);
  CHECK(id.log_det == 0.0);

  Eigen::MatrixXd d(2, 2);
  d << 4.0, 0.0, 0.0, 9.0;
  const SpdFactor f = spd_factorize(d);
  CHECK(f.lower(0, 0) == doctest::Approx(2.0));
  CHECK(f.lower(1, 1) == doctest::Approx(3.0));
  CHECK(f.lower(1, 0) == 0.0);
  CHECK(f.log_det == doctest::Approx(std::log(36.0)).epsilon(1e-15));
}

TEST_CASE("spd_factorize rejects an indefinite matrix naming the pivot") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 2.0, 2.0, 1.0;
  try {
    spd_factorize(m);
    FAIL("expected FactorizationError");
  } catch (const FactorizationError& e) {
    CHECK(e.pivot() == 2);
    CHECK(std::string(e.what()).find("pivot 2") != std::string::npos);
  }
  CHECK_THROWS_AS(spd_factorize(Eigen::MatrixXd::Ones(2, 3)),
                  std::invalid_argument);
  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS(spd_factorize(asym), std::invalid_argument);
}

TEST_CASE("spd_factorize reconstructs random SPD matrices") {
  RngStream rng(11, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 1 + static_cast<int>(rng.next_u64() % 4);
    Eigen::MatrixXd b(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) b(i, j) = rng.normal();
    const Eigen::MatrixXd m =
        b.transpose() * b + 0.05 * Eigen::MatrixXd::Identity(d, d);
    const SpdFactor f = spd_factorize(m);
    CHECK((f.reconstruct() - m).cwiseAbs().maxCoeff() <=
          1e-10 * m.cwiseAbs().maxCoeff());
    for (int i = 0; i < d; ++i) CHECK(f.lower(i, i) > 0.0);
  }
}

TEST_CASE("mvn_sample is reproducible for a fixed stream") {
  const GaussianSpec spec = GaussianSpec::from_moments(
      Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Identity(2, 2));
  RngStream a(123, 7);
  RngStream b(123, 7);
  const Eigen::VectorXd xa = mvn_sample(spec, a);
  const Eigen::VectorXd xb = mvn_sample(spec, b);
  CHECK(xa == xb);
  RngStream c(123, 8);
  CHECK(mvn_sample(spec, c) != xa);
}

TEST_CASE("mvn_sample moments match the spec within 4 standard errors") {
  Eigen::VectorXd mu(2);
  mu << 1.5, -0.5;
  Eigen::MatrixXd cov(2, 2);
  cov << 2.0, 0.8, 0.8, 1.0;
  const GaussianSpec spec = GaussianSpec::from_moments(mu, cov);
  RngStream rng(2024, 3);
  const int n = 100000;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(2);
  Eigen::MatrixXd sum2 = Eigen::MatrixXd::Zero(2, 2);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd x = mvn_sample(spec, rng);
    sum += x;
    sum2 += x * x.transpose();
  }
  const Eigen::VectorXd mean = sum / n;
  const Eigen::MatrixXd second = sum2 / n - mean * mean.transpose();
  for (int j = 0; j < 2; ++j) {
    const double se = std::sqrt(cov(j, j) / n);
    CHECK(std::abs(mean[j] - mu[j]) < 4 * se);
  }
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      // var of a sample covariance entry ~ (cov_aa*cov_bb + cov_ab^2)/n
      const double se =
          std::sqrt((cov(a, a) * cov(b, b) + cov(a, b) * cov(a, b)) / n);
      CHECK(std::abs(second(a, b) - cov(a, b)) < 4 * se);
    }
  }
}

TEST_CASE("mvn_logpdf closed forms and dense-inverse oracle") {
  const GaussianSpec unit = GaussianSpec::from_moments(
      Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Identity(1, 1));
  CHECK(mvn_logpdf(Eigen::VectorXd::Zero(1), unit) ==
        doctest::Approx(-0.5 * k_log_2pi).epsilon(1e-15));

  Eigen::VectorXd mu(3);
  mu << 0.3, -1.0, 2.0;
  Eigen::MatrixXd cov(3, 3);
  cov << 1.2, 0.3, -0.1, 0.3, 0.9, 0.2, -0.1, 0.2, 1.5;
  const GaussianSpec spec = GaussianSpec::from_moments(mu, cov);
  CHECK(mvn_logpdf(mu, spec) ==
        doctest::Approx(-0.5 * (3 * k_log_2pi + spec.cov_factor.log_det))
            .epsilon(1e-14));

  RngStream rng(5, 5);
  const Eigen::MatrixXd cov_inv = cov.inverse();
  const double logdet_dense = std::log(cov.determinant());
  for (int rep = 0; rep < 25; ++rep) {
    Eigen::VectorXd x(3);
    for (int j = 0; j < 3; ++j) x[j] = mu[j] + 2.0 * rng.normal();
    const double direct = -0.5 * (3 * k_log_2pi + logdet_dense +
                                  (x - mu).dot(cov_inv * (x - mu)));
    CHECK(mvn_logpdf(x, spec) == doctest::Approx(direct).epsilon(1e-10));
  }
  CHECK_THROWS_AS(mvn_logpdf(Eigen::VectorXd::Zero(2), spec),
                  std::invalid_argument);
}

TEST_CASE("mvn_logpdf whitening identity") {
  Eigen::VectorXd mu(2);
  mu << 0.7, -0.2;
  Eigen::MatrixXd cov(2, 2);
  cov << 1.4, -0.5, -0.5, 0.8;
  const GaussianSpec spec = GaussianSpec::from_moments(mu, cov);
  const GaussianSpec white = GaussianSpec::from_moments(
      Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Identity(2, 2));
  RngStream rng(9, 1);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::VectorXd x(2);
    for (int j = 0; j < 2; ++j) x[j] = rng.normal() * 1.5;
    const Eigen::VectorXd u = spec.cov_factor.forward_solve(x - mu);
    CHECK(mvn_logpdf(x, spec) ==
          doctest::Approx(mvn_logpdf(u, white) - 0.5 * spec.cov_factor.log_det)
              .epsilon(1e-10));
  }
}

TEST_CASE("mvn density integrates to one at low dimension") {
  const GaussianSpec g1 = GaussianSpec::from_moments(
      (Eigen::VectorXd(1) << 0.4).finished(),
      (Eigen::MatrixXd(1, 1) << 1.7).finished());
  double h = 0.01;
  double s = 0.0;
  for (double x = -15.0; x <= 15.0; x += h) {
    s += std::exp(mvn_logpdf((Eigen::VectorXd(1) << x).finished(), g1)) * h;
  }
  CHECK(s == doctest::Approx(1.0).epsilon(1e-6));

  Eigen::MatrixXd cov(2, 2);
  cov << 1.0, 0.4, 0.4, 0.8;
  const GaussianSpec g2 =
      GaussianSpec::from_moments(Eigen::VectorXd::Zero(2), cov);
  h = 0.05;
  s = 0.0;
  Eigen::VectorXd x(2);
  for (double a = -10.0; a <= 10.0; a += h) {
    for (double b = -10.0; b <= 10.0; b += h) {
      x << a, b;
      s += std::exp(mvn_logpdf(x, g2)) * h * h;
    }
  }
  CHECK(s == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("truncated normal: half-normal moments at mu=0") {
  RngStream rng(77, 0);
  const int n = 100000;
  double sum = 0.0;
  bool all_positive = true;
  for (int i = 0; i < n; ++i) {
    const double v =
        truncated_normal_sample(0.0, 1.0, TruncationSide::right_of_zero, rng);
    all_positive = all_positive && v > 0.0;
    sum += v;
  }
  CHECK(all_positive);
  CHECK(std::abs(sum / n - refvals::half_normal_mean) < 0.01);
}

TEST_CASE("truncated normal: inactive truncation looks like the plain normal") {
  RngStream rng(78, 0);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += truncated_normal_sample(10.0, 1.0, TruncationSide::right_of_zero, rng);
  }
  CHECK(std::abs(sum / n - 10.0) < 0.02);
}

TEST_CASE("truncated normal: deep tail matches the Mills-ratio mean") {
  RngStream rng(79, 0);
  const int n = 100000;
  double sum = 0.0;
  bool all_positive = true;
  for (int i = 0; i < n; ++i) {
    const double v =
        truncated_normal_sample(-8.0, 1.0, TruncationSide::right_of_zero, rng);
    all_positive = all_positive && v > 0.0;
    sum += v;
  }
  CHECK(all_positive);
  CHECK(std::abs(sum / n - refvals::trunc_mean_mu_m8) < 0.01);
}

TEST_CASE("truncated normal: left side stays non-positive, mirrored mean") {
  RngStream rng(80, 0);
  const int n = 50000;
  double sum = 0.0;
  bool all_ok = true;
  for (int i = 0; i < n; ++i) {
    const double v =
        truncated_normal_sample(0.0, 2.0, TruncationSide::left_of_zero, rng);
    all_ok = all_ok && v <= 0.0;
    sum += v;
  }
  CHECK(all_ok);
  CHECK(std::abs(sum / n + 2.0 * refvals::half_normal_mean) < 0.03);
  CHECK_THROWS_AS(
      truncated_normal_sample(0.0, 0.0, TruncationSide::left_of_zero, rng),
      std::invalid_argument);
}

TEST_CASE("logsumexp basics and shift invariance") {
  const std::vector<double> two_zeros{0.0, 0.0};
  CHECK(logsumexp(two_zeros) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const std::vector<double> tiny{-1000.0, -1000.0};
  CHECK(logsumexp(tiny) ==
        doctest::Approx(-1000.0 + std::log(2.0)).epsilon(1e-15));
  const std::vector<double> empty;
  CHECK_THROWS_AS(logsumexp(empty), std::invalid_argument);

  RngStream rng(3, 3);
  std::vector<double> v(100);
  for (auto& x : v) x = rng.normal();
  // naive-sum oracle at small magnitudes
  double naive = 0.0;
  for (double x : v) naive += std::exp(x);
  CHECK(logsumexp(v) == doctest::Approx(std::log(naive)).epsilon(1e-12));
  // shift invariance
  for (double c : {-700.0, -3.2, 0.0, 10.0, 700.0}) {
    std::vector<double> shifted = v;
    for (auto& x : shifted) x += c;
    CHECK(logsumexp(shifted) ==
          doctest::Approx(logsumexp(v) + c).epsilon(1e-12));
  }
  const std::vector<double> with_ninf{-std::numeric_limits<double>::infinity(),
                                      0.0};
  CHECK(logsumexp(with_ninf) == doctest::Approx(0.0).epsilon(1e-15));
  const std::vector<double> all_ninf{-std::numeric_limits<double>::infinity(),
                                     -std::numeric_limits<double>::infinity()};
  CHECK(logsumexp(all_ninf) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("rng streams reproduce exactly and decorrelate across ids") {
  RngStream a(42, 1), b(42, 1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  RngStream u1(42, 10), u2(42, 11);
  const int n = 100000;
  double sxy = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = u1.uniform();
    const double y = u2.uniform();
    sx += x;
    sy += y;
    sxy += x * y;
    sxx += x * x;
    syy += y * y;
  }
  const double corr =
      (sxy / n - sx / n * sy / n) / std::sqrt((sxx / n - sx / n * sx / n) *
                                              (syy / n - sy / n * sy / n));
  CHECK(std::abs(corr) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("uniform stays inside the open interval") {
  RngStream rng(1, 1);
  bool ok = true;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ok = ok && u > 0.0 && u < 1.0;
  }
  CHECK(ok);
}
