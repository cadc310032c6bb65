#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bfp/estimators.hpp"
#include "bfp/probit_model.hpp"

namespace bfp::bench {

// Stream roles: each (replication, estimator, model) triple owns a stream.
// The documented id hash is  stream_id = replication * 32 + role.
enum class StreamRole : std::uint64_t {
  mc_model0 = 0,
  mc_model1 = 1,
  is_model0 = 2,
  is_model1 = 3,
  chain_model0 = 4,
  chain_model1 = 5,
  bridge_completion = 6,
  bridge_opt_completion = 7,
  pseudo_completion = 8,
};

constexpr std::uint64_t stream_id_for(std::uint64_t replication,
                                      StreamRole role) {
  return replication * 32 + static_cast<std::uint64_t>(role);
}

struct BenchConfig {
  std::string data_path;
  std::set<std::string> estimators = {"all"};
  long n_sims = 20000;
  int replications = 100;
  std::uint64_t seed = 42;
  std::string output_format = "json";  // json | csv
  std::string output_path;             // empty -> stdout
  int jobs = 0;                        // 0 -> BENCH_JOBS env or hardware
  bool include_timing = true;
  std::vector<std::string> model0_cols = {"glu", "bp"};
  std::vector<std::string> model1_cols = {"glu", "bp", "ped"};
  std::optional<double> g;                // default: n
  double alpha_weight_model1 = 0.5;       // paper-alpha averaging weight
  int bridge_opt_iterations = 50;
};

// The known estimator names, in report order.
std::span<const std::string> estimator_names();

// Validates and expands "all"; throws std::invalid_argument on unknown names
// or out-of-range budgets.
std::set<std::string> resolve_estimators(const BenchConfig& config);

struct SummaryStats {
  double median = 0.0;
  double sd = 0.0;
};

// Median via the midpoint-of-order-statistics convention; sample standard
// deviation with the N-1 divisor. Throws on empty input.
SummaryStats summarize(std::span<const double> estimates);

struct EstimatorSummary {
  double median = 0.0;
  double sd = 0.0;
  double wall_time_mean_s = 0.0;
  std::vector<double> estimates;  // B01, one per replication
};

struct ModelFitReport {
  std::vector<std::string> columns;
  std::vector<double> coefficients;
  std::vector<double> standard_errors;
  int iterations = 0;
  bool converged = false;
  double minus_two_log_lik = 0.0;
};

struct ReplicationSummary {
  ModelFitReport mle0, mle1;
  std::map<std::string, EstimatorSummary> per_estimator;
};

// Reads a CSV with at least the configured covariate columns plus `type`
// (any column order, quoted cells allowed, extra columns ignored). The
// response is 1 for type in {Yes, yes, 1} and 0 for {No, no, 0}; anything
// else is a DataError naming the offending row.
Dataset load_pima_csv(const std::string& path);

// Full experiment: builds the two models, fits both MLEs once, then runs
// `replications` independent replications of every requested estimator with
// budget n_sims per model, sharing one pair of Gibbs chains per replication
// across the chain-consuming estimators. Deterministic for a fixed
// (config, seed) at any jobs count.
ReplicationSummary run_benchmark(const BenchConfig& config);
ReplicationSummary run_benchmark(const BenchConfig& config,
                                 std::shared_ptr<const Dataset> data);

std::string to_json(const ReplicationSummary& summary,
                    const BenchConfig& config);
std::string to_csv(const ReplicationSummary& summary,
                   const BenchConfig& config);

// Renders per config.output_format and writes to config.output_path (or
// stdout when empty).
void write_output(const ReplicationSummary& summary, const BenchConfig& config);

}  // namespace bfp::bench
