#pragma once

#include "sstl/space.hpp"
#include "sstl/time.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sstl {

/// Spatio-temporal trace: for every location and every grid time k*h
/// (k = 0..samples-1) a vector of named real values.
class Trace {
public:
  Trace() = default;
  /// Zero-filled trace. Throws std::invalid_argument on an empty schema,
  /// zero samples or a non-positive step.
  Trace(std::vector<std::string> variables, std::size_t locations, std::size_t samples, Time step);

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  std::size_t locations() const noexcept { return locations_; }
  std::size_t samples() const noexcept { return samples_; }
  Time step() const noexcept { return step_; }
  /// Time of the last sample, (samples-1)*h.
  Time end_time() const { return step_ * Time(static_cast<std::int64_t>(samples_ - 1)); }

  /// Throws std::out_of_range for an unknown name.
  std::size_t variable_index(const std::string& name) const;

  double& at(std::size_t location, std::size_t k, std::size_t var) {
    return data_[(location * samples_ + k) * variables_.size() + var];
  }
  double at(std::size_t location, std::size_t k, std::size_t var) const {
    return data_[(location * samples_ + k) * variables_.size() + var];
  }

  /// Values of all variables at one (location, k), in schema order.
  std::span<const double> sample(std::size_t location, std::size_t k) const {
    return {data_.data() + (location * samples_ + k) * variables_.size(), variables_.size()};
  }

  bool operator==(const Trace&) const = default;

private:
  std::vector<std::string> variables_;
  std::size_t locations_ = 0;
  std::size_t samples_ = 0;
  Time step_{1};
  std::vector<double> data_;
};

/// Trace CSV: header `location,time,<var1>,<var2>,...`, one row per
/// (location, time), rows in any order. Times must form the same uniform
/// grid 0, h, 2h, ... at every location. Values use the shortest round-trip
/// decimal form, so write followed by read is lossless.
///
/// Throws FormatError (with line number) on malformed rows, unknown
/// locations, duplicate or missing cells and ragged time grids.
Trace read_trace(std::istream& in, const SpaceModel& space);
Trace read_trace(const std::filesystem::path& path, const SpaceModel& space);
void write_trace(const Trace& trace, const SpaceModel& space, std::ostream& out);
void write_trace(const Trace& trace, const SpaceModel& space, const std::filesystem::path& path);

} // namespace sstl
