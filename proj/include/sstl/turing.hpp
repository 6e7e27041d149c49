#pragma once

#include "sstl/space.hpp"
#include "sstl/time.hpp"
#include "sstl/trace.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sstl {

/// Two-species reaction-diffusion system on a K x K grid:
///
///     dxA/dt = R1 xA xB - xA + R2 + D1 (muA - xA)
///     dxB/dt = R3 xA xB      + R4 + D2 (muB - xB)
///
/// where mu is the mean of the variable over the 2 to 4 adjacent cells.
struct TuringParams {
  std::size_t K = 32;
  double R1 = 1.0;
  double R2 = -12.0;
  double R3 = -1.0;
  double R4 = 16.0;
  double D1 = 5.6;
  double D2 = 25.5;
  Time dt{1, 100};
  /// End time; samples are taken at 0, h, ..., T.
  Time T{50};
  Time h{1, 2};
  double init_low = 0.0;
  double init_high = 16.0;
  std::uint64_t seed = 0;
  /// White-noise intensity; 0 integrates the deterministic system.
  double epsilon = 0.0;
  /// Concentrations are floored at 0 after every step.
  bool clamp_nonnegative = true;
  /// Optional initial state, K*K values per species in row-major order.
  /// Replaces the uniform draw when present.
  std::optional<std::vector<double>> initial_a;
  std::optional<std::vector<double>> initial_b;
};

/// Throws std::invalid_argument on K < 2, dt <= 0, h not a multiple of dt,
/// T not a multiple of h, init_low > init_high, epsilon < 0, or an initial
/// state of the wrong size.
void validate(const TuringParams& p);

/// Explicit Euler (Euler-Maruyama when epsilon > 0, adding
/// epsilon * sqrt(dt) * N(0,1) per cell, species and step) on regular_grid(K, 1).
/// The trace has variables xA, xB, sampled every h without averaging.
///
/// Draw order from one mt19937_64 seeded with `seed`: initial xA for every
/// cell, then xB, then per step the xA noise then the xB noise, cells in
/// row-major order. Throws IntegrationError at the first non-finite state.
Trace simulate_turing(const TuringParams& params);

/// The space the simulated trace lives on.
SpaceModel turing_space(const TuringParams& params);

/// Reads `key = value` lines (`#` comments) over the defaults in `base`.
/// Keys: K R1 R2 R3 R4 D1 D2 dt T h init_low init_high seed epsilon clamp.
/// Throws FormatError with the line number on unknown keys or bad values.
TuringParams read_turing_config(std::istream& in, TuringParams base = {});
TuringParams read_turing_config(const std::filesystem::path& path, TuringParams base = {});

/// Applies one `key` / `value` pair; throws std::invalid_argument.
void set_turing_param(TuringParams& p, const std::string& key, const std::string& value);

} // namespace sstl
