#include "sstl/turing.hpp"

#include "sstl/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

namespace sstl {

void validate(const TuringParams& p) {
  if (p.K < 2) throw std::invalid_argument("K must be at least 2");
  if (p.dt <= Time(0)) throw std::invalid_argument("dt must be positive");
  if (p.h <= Time(0)) throw std::invalid_argument("h must be positive");
  if (p.T < Time(0)) throw std::invalid_argument("T must be non-negative");
  if ((p.h / p.dt).denominator() != 1) throw std::invalid_argument("h must be a multiple of dt");
  if ((p.T / p.h).denominator() != 1) throw std::invalid_argument("T must be a multiple of h");
  if (!(p.init_low <= p.init_high)) throw std::invalid_argument("init_low exceeds init_high");
  if (!(p.epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  const std::size_t cells = p.K * p.K;
  if (p.initial_a && p.initial_a->size() != cells) {
    throw std::invalid_argument("initial xA needs K*K values");
  }
  if (p.initial_b && p.initial_b->size() != cells) {
    throw std::invalid_argument("initial xB needs K*K values");
  }
}

SpaceModel turing_space(const TuringParams& params) { return regular_grid(params.K, 1.0); }

Trace simulate_turing(const TuringParams& p) {
  validate(p);
  const std::size_t K = p.K;
  const std::size_t cells = K * K;
  const auto steps_per_sample = static_cast<std::size_t>((p.h / p.dt).numerator());
  const auto samples = static_cast<std::size_t>((p.T / p.h).numerator()) + 1;

  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> uniform(p.init_low, p.init_high);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> a(cells), b(cells);
  for (auto& v : a) v = uniform(rng);
  for (auto& v : b) v = uniform(rng);
  if (p.initial_a) a = *p.initial_a;
  if (p.initial_b) b = *p.initial_b;

  std::vector<std::vector<std::size_t>> adjacent(cells);
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = 0; j < K; ++j) {
      auto& adj = adjacent[i * K + j];
      if (i > 0) adj.push_back((i - 1) * K + j);
      if (i + 1 < K) adj.push_back((i + 1) * K + j);
      if (j > 0) adj.push_back(i * K + j - 1);
      if (j + 1 < K) adj.push_back(i * K + j + 1);
    }
  }

  Trace trace({"xA", "xB"}, cells, samples, p.h);
  auto record = [&](std::size_t k) {
    for (std::size_t c = 0; c < cells; ++c) {
      trace.at(c, k, 0) = a[c];
      trace.at(c, k, 1) = b[c];
    }
  };
  record(0);

  const double dt = to_double(p.dt);
  const double noise = p.epsilon * std::sqrt(dt);
  std::vector<double> na(cells), nb(cells), ea(cells, 0.0), eb(cells, 0.0);
  std::size_t step = 0;
  for (std::size_t k = 1; k < samples; ++k) {
    for (std::size_t s = 0; s < steps_per_sample; ++s, ++step) {
      if (p.epsilon > 0.0) {
        for (auto& v : ea) v = noise * normal(rng);
        for (auto& v : eb) v = noise * normal(rng);
      }
      bool finite = true;
      for (std::size_t c = 0; c < cells; ++c) {
        double mu_a = 0.0, mu_b = 0.0;
        for (const auto n : adjacent[c]) {
          mu_a += a[n];
          mu_b += b[n];
        }
        const auto deg = static_cast<double>(adjacent[c].size());
        mu_a /= deg;
        mu_b /= deg;
        const double ab = a[c] * b[c];
        const double fa = p.R1 * ab - a[c] + p.R2 + p.D1 * (mu_a - a[c]);
        const double fb = p.R3 * ab + p.R4 + p.D2 * (mu_b - b[c]);
        na[c] = a[c] + dt * fa + ea[c];
        nb[c] = b[c] + dt * fb + eb[c];
        if (p.clamp_nonnegative) {
          na[c] = std::max(na[c], 0.0);
          nb[c] = std::max(nb[c], 0.0);
        }
        finite = finite && std::isfinite(na[c]) && std::isfinite(nb[c]);
      }
      if (!finite) {
        const double t = static_cast<double>(step + 1) * dt;
        throw IntegrationError("state diverged at t = " + std::to_string(t), t);
      }
      a.swap(na);
      b.swap(nb);
    }
    record(k);
  }
  return trace;
}

namespace {

double parse_real(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed number '" + s + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed integer '" + s + "'");
  }
  return v;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

} // namespace

void set_turing_param(TuringParams& p, const std::string& key, const std::string& value) {
  if (key == "K") p.K = static_cast<std::size_t>(parse_unsigned(value));
  else if (key == "R1") p.R1 = parse_real(value);
  else if (key == "R2") p.R2 = parse_real(value);
  else if (key == "R3") p.R3 = parse_real(value);
  else if (key == "R4") p.R4 = parse_real(value);
  else if (key == "D1") p.D1 = parse_real(value);
  else if (key == "D2") p.D2 = parse_real(value);
  else if (key == "dt") p.dt = parse_time(value);
  else if (key == "T") p.T = parse_time(value);
  else if (key == "h") p.h = parse_time(value);
  else if (key == "init_low") p.init_low = parse_real(value);
  else if (key == "init_high") p.init_high = parse_real(value);
  else if (key == "seed") p.seed = parse_unsigned(value);
  else if (key == "epsilon") p.epsilon = parse_real(value);
  else if (key == "clamp") {
    if (value == "true" || value == "1") p.clamp_nonnegative = true;
    else if (value == "false" || value == "0") p.clamp_nonnegative = false;
    else throw std::invalid_argument("clamp must be true or false");
  } else {
    throw std::invalid_argument("unknown parameter '" + key + "'");
  }
}

TuringParams read_turing_config(std::istream& in, TuringParams base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("expected key = value", line_no);
    try {
      set_turing_param(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what(), line_no);
    }
  }
  return base;
}

TuringParams read_turing_config(const std::filesystem::path& path, TuringParams base) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open config file " + path.string());
  return read_turing_config(in, std::move(base));
}

} // namespace sstl
