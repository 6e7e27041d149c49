#include "sstl/time.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sstl {

namespace {

std::int64_t pow10(int n) {
  std::int64_t p = 1;
  for (int i = 0; i < n; ++i) {
    if (p > std::numeric_limits<std::int64_t>::max() / 10) {
      throw std::invalid_argument("time value needs more precision than supported");
    }
    p *= 10;
  }
  return p;
}

} // namespace

Time parse_time(std::string_view text) {
  const std::string_view original = text;
  auto fail = [&]() -> Time {
    throw std::invalid_argument("not a decimal time value: '" + std::string(original) + "'");
  };
  if (text.empty()) return fail();

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  int exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    const auto exp_text = text.substr(e + 1);
    const char* first = exp_text.data();
    const char* last = first + exp_text.size();
    if (!exp_text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr != last || first == last) return fail();
    text = text.substr(0, e);
  }

  std::int64_t mantissa = 0;
  int fraction_digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) return fail();
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') return fail();
    seen_digit = true;
    if (mantissa > (std::numeric_limits<std::int64_t>::max() - 9) / 10) {
      throw std::invalid_argument("time value has too many digits: '" + std::string(original) + "'");
    }
    mantissa = mantissa * 10 + (c - '0');
    if (seen_point) ++fraction_digits;
  }
  if (!seen_digit) return fail();

  const int scale = exponent - fraction_digits;
  Time result = scale >= 0 ? Time(mantissa) * Time(pow10(scale)) : Time(mantissa, pow10(-scale));
  return negative ? -result : result;
}

Time time_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("time must be finite");
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return parse_time(std::string_view(buf.data(), static_cast<std::size_t>(end - buf.data())));
}

double to_double(const Time& t) {
  return static_cast<double>(t.numerator()) / static_cast<double>(t.denominator());
}

std::string to_string(const Time& t) {
  if (t.denominator() == 1) return std::to_string(t.numerator());
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), to_double(t));
  return std::string(buf.data(), end);
}

std::int64_t floor_div(const Time& a, const Time& b) {
  const Time q = a / b;
  std::int64_t f = q.numerator() / q.denominator();
  if (q.numerator() % q.denominator() != 0 && q.numerator() < 0) --f;
  return f;
}

std::int64_t ceil_div(const Time& a, const Time& b) {
  const Time q = a / b;
  std::int64_t c = q.numerator() / q.denominator();
  if (q.numerator() % q.denominator() != 0 && q.numerator() > 0) ++c;
  return c;
}

} // namespace sstl
