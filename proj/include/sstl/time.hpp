#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace sstl {

/// Time instants and durations.
///
/// Traces are sampled on a uniform grid and formula bounds are written in
/// decimal, so every endpoint that appears during monitoring is an exact
/// rational. Interval arithmetic on Boolean signals never compares floats.
using Time = boost::rational<std::int64_t>;

/// Exact decimal parse: "0.5" -> 1/2, "19" -> 19, "2.5e-1" -> 1/4.
/// Throws std::invalid_argument on malformed input.
Time parse_time(std::string_view text);

/// Exact value of the shortest decimal representation of `value`.
Time time_from_double(double value);

double to_double(const Time& t);

std::string to_string(const Time& t);

/// floor(a / b) and ceil(a / b) for b > 0.
std::int64_t floor_div(const Time& a, const Time& b);
std::int64_t ceil_div(const Time& a, const Time& b);

} // namespace sstl
