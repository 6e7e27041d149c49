#include "sstl/smc.hpp"

#include "parallel.hpp"
#include "sstl/errors.hpp"
#include "sstl/monitor_bool.hpp"
#include "sstl/monitor_quant.hpp"

#include <boost/math/distributions/normal.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sstl {

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ConfidenceInterval wilson_interval(std::size_t successes, std::size_t runs, double alpha) {
  if (runs == 0) throw std::invalid_argument("confidence interval needs at least one run");
  if (successes > runs) throw std::invalid_argument("more successes than runs");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  const double n = static_cast<double>(runs);
  const double p = static_cast<double>(successes) / n;
  const double z = boost::math::quantile(boost::math::normal(), 1.0 - alpha / 2.0);
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  ConfidenceInterval ci{std::clamp(centre - half, 0.0, p), std::clamp(centre + half, p, 1.0)};
  if (successes == 0) ci.low = 0.0;
  if (successes == runs) ci.high = 1.0;
  return ci;
}

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson needs series of equal length");
  if (x.size() < 2) return std::nullopt;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) return std::nullopt;
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

SMCEstimate aggregate(const std::vector<RunRecord>& records, double alpha) {
  SMCEstimate e;
  e.alpha = alpha;
  e.runs = records.size();
  double sum = 0.0, sum_true = 0.0, sum_false = 0.0;
  std::size_t n_false = 0;
  for (const auto& r : records) {
    const double rho = r.robustness.to_double();
    sum += rho;
    if (r.verdict) {
      ++e.successes;
      sum_true += rho;
    } else {
      ++n_false;
      sum_false += rho;
    }
  }
  const auto ci = wilson_interval(e.successes, e.runs, alpha);
  e.p_hat = static_cast<double>(e.successes) / static_cast<double>(e.runs);
  e.ci_low = ci.low;
  e.ci_high = ci.high;
  e.rob_mean = sum / static_cast<double>(e.runs);
  if (e.runs > 1) {
    double ss = 0.0;
    for (const auto& r : records) {
      const double d = r.robustness.to_double() - e.rob_mean;
      ss += d * d;
    }
    e.rob_std = std::sqrt(ss / static_cast<double>(e.runs - 1));
  }
  if (e.successes > 0) e.rob_mean_true = sum_true / static_cast<double>(e.successes);
  if (n_false > 0) e.rob_mean_false = sum_false / static_cast<double>(n_false);
  return e;
}

namespace {

template <class E>
[[noreturn]] void rethrow_with_run(const E& e, std::size_t run) {
  throw E("run " + std::to_string(run) + ": " + e.what());
}

} // namespace

SMCEstimate estimate(const TraceGenerator& generator, const SpaceModel& space,
                     const EstimateConfig& config, std::vector<RunRecord>* records) {
  if (config.runs == 0) throw std::invalid_argument("estimate needs at least one run");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  if (config.location >= space.size()) throw std::invalid_argument("probe location out of range");
  std::vector<RunRecord> out(config.runs);
  MonitorOptions options;
  options.jobs = 1;
  detail::parallel_for(config.runs, config.jobs, [&](unsigned, std::size_t i) {
    RunRecord& r = out[i];
    r.run = i;
    r.seed = split_seed(config.seed, i);
    Trace trace;
    try {
      trace = generator(r.seed);
    } catch (const IntegrationError& e) {
      throw IntegrationError("run " + std::to_string(i) + ": " + e.what(), e.time());
    } catch (const EvaluationError& e) {
      rethrow_with_run(e, i);
    }
    r.verdict = monitor_bool(config.formula, trace, space, options).satisfied_at_zero[config.location];
    r.robustness = monitor_quant(config.formula, trace, space, options).robustness_at_zero[config.location];
  });
  if (records) *records = out;
  return aggregate(out, config.alpha);
}

SweepResult sweep(const GeneratorFamily& family, const std::vector<double>& parameters,
                  const SpaceModel& space, const EstimateConfig& config,
                  std::vector<std::vector<RunRecord>>* records) {
  for (std::size_t i = 1; i < parameters.size(); ++i) {
    if (!(parameters[i - 1] < parameters[i])) {
      throw std::invalid_argument("sweep parameters must be strictly increasing");
    }
  }
  SweepResult result;
  if (records) records->clear();
  std::vector<double> p, rob;
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    EstimateConfig c = config;
    c.seed = split_seed(config.seed, i);
    std::vector<RunRecord> runs;
    const auto e = estimate(family(parameters[i]), space, c, &runs);
    result.points.push_back({parameters[i], e});
    p.push_back(e.p_hat);
    rob.push_back(e.rob_mean);
    if (records) records->push_back(std::move(runs));
  }
  result.pearson_r = pearson(p, rob);
  return result;
}

std::vector<double> parse_grid(const std::string& text) {
  auto number = [&](const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw std::invalid_argument("malformed grid value '" + s + "' in '" + text + "'");
    }
    return v;
  };
  std::vector<double> out;
  if (const auto c1 = text.find(':'); c1 != std::string::npos) {
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("grid must be lo:hi:step");
    const double lo = number(text.substr(0, c1));
    const double hi = number(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = number(text.substr(c2 + 1));
    if (!(step > 0.0) || hi < lo) throw std::invalid_argument("grid needs lo <= hi and step > 0");
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) {
      out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(number(item));
  if (out.empty()) throw std::invalid_argument("empty grid");
  return out;
}

namespace {

nlohmann::json number_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? number_json(*v) : nlohmann::json(nullptr);
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return to_string(ExtReal(v));
}

} // namespace

std::string estimate_json(const SMCEstimate& e) {
  nlohmann::ordered_json j;
  j["runs"] = e.runs;
  j["successes"] = e.successes;
  j["p_hat"] = e.p_hat;
  j["ci"] = {e.ci_low, e.ci_high};
  j["alpha"] = e.alpha;
  j["rob"] = {{"mean", number_json(e.rob_mean)},
              {"std", number_json(e.rob_std)},
              {"mean_true", optional_json(e.rob_mean_true)},
              {"mean_false", optional_json(e.rob_mean_false)}};
  return j.dump(2);
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "epsilon,p_hat,ci_lo,ci_hi,rob_mean,rob_std\n";
  for (const auto& p : result.points) {
    out << csv_number(p.parameter) << ',' << csv_number(p.estimate.p_hat) << ','
        << csv_number(p.estimate.ci_low) << ',' << csv_number(p.estimate.ci_high) << ','
        << csv_number(p.estimate.rob_mean) << ',' << csv_number(p.estimate.rob_std) << '\n';
  }
}

void write_runs_csv(const std::vector<RunRecord>& records, std::ostream& out) {
  out << "run,seed,verdict,robustness\n";
  for (const auto& r : records) {
    out << r.run << ',' << r.seed << ',' << (r.verdict ? 1 : 0) << ',' << to_string(r.robustness)
        << '\n';
  }
}

} // namespace sstl
