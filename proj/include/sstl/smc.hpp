#pragma once

#include "sstl/extended_real.hpp"
#include "sstl/formula.hpp"
#include "sstl/space.hpp"
#include "sstl/trace.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sstl {

/// Seed of run `index` under `master`: the splitmix64 finaliser applied to
/// master + (index + 1) * 0x9E3779B97F4A7C15. Depends only on its arguments,
/// so runs can execute in any order.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

struct ConfidenceInterval {
  double low;
  double high;
};

/// Wilson score interval for `successes` out of `runs` at significance
/// `alpha` (coverage 1 - alpha). Throws std::invalid_argument unless
/// runs >= 1, successes <= runs and 0 < alpha < 1.
ConfidenceInterval wilson_interval(std::size_t successes, std::size_t runs, double alpha);

/// Pearson correlation; nullopt when fewer than two points, a value is not
/// finite, or either series is constant.
std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

struct RunRecord {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  bool verdict = false;
  ExtReal robustness;
};

struct SMCEstimate {
  std::size_t runs = 0;
  std::size_t successes = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  /// Moments of the robustness at t = 0; sample standard deviation (n - 1),
  /// 0 for a single run. Infinite robustness makes them infinite or NaN.
  double rob_mean = 0.0;
  double rob_std = 0.0;
  std::optional<double> rob_mean_true;
  std::optional<double> rob_mean_false;
  double alpha = 0.05;
};

/// Draws one trace for a run seed.
using TraceGenerator = std::function<Trace(std::uint64_t seed)>;

struct EstimateConfig {
  Formula formula;
  LocationIndex location = 0;
  std::size_t runs = 100;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
};

/// Aggregate of run-indexed records; independent of their order.
SMCEstimate aggregate(const std::vector<RunRecord>& records, double alpha);

/// Simulates `runs` traces with seeds split_seed(seed, i), monitors each
/// (Boolean verdict and robustness at t = 0 at `location`) and aggregates.
/// A failing run is rethrown as the same error type with "run i: " prefixed.
SMCEstimate estimate(const TraceGenerator& generator, const SpaceModel& space,
                     const EstimateConfig& config, std::vector<RunRecord>* records = nullptr);

struct SweepPoint {
  double parameter;
  SMCEstimate estimate;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  /// Pearson r over (p_hat, rob_mean); nullopt when undefined.
  std::optional<double> pearson_r;
};

/// Builds a generator for one parameter value.
using GeneratorFamily = std::function<TraceGenerator(double parameter)>;

/// One estimate per parameter; point i uses master seed split_seed(seed, i).
/// Throws std::invalid_argument unless `parameters` is strictly increasing.
SweepResult sweep(const GeneratorFamily& family, const std::vector<double>& parameters,
                  const SpaceModel& space, const EstimateConfig& config,
                  std::vector<std::vector<RunRecord>>* records = nullptr);

/// Parses "lo:hi:step" (inclusive, rounded to the step) or a comma list.
std::vector<double> parse_grid(const std::string& text);

/// {"runs","successes","p_hat","ci":[lo,hi],"alpha","rob":{"mean","std","mean_true","mean_false"}};
/// absent conditional means are null, non-finite numbers are the strings "inf", "-inf", "nan".
std::string estimate_json(const SMCEstimate& e);
/// CSV `epsilon,p_hat,ci_lo,ci_hi,rob_mean,rob_std`.
void write_sweep_csv(const SweepResult& result, std::ostream& out);
/// CSV `run,seed,verdict,robustness`.
void write_runs_csv(const std::vector<RunRecord>& records, std::ostream& out);

} // namespace sstl
