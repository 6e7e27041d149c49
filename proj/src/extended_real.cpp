#include "sstl/extended_real.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace sstl {

ExtReal::ExtReal(double value) {
  if (std::isnan(value)) throw std::domain_error("NaN is not an extended real");
  if (std::isinf(value)) {
    kind_ = value > 0 ? Kind::PosInf : Kind::NegInf;
  } else {
    value_ = value;
  }
}

std::string to_string(const ExtReal& value) {
  if (value.is_pos_inf()) return "inf";
  if (value.is_neg_inf()) return "-inf";
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value.finite_value());
  return std::string(buf.data(), end);
}

ExtReal parse_ext_real(const std::string& text) {
  if (text == "inf" || text == "+inf" || text == "infinity" || text == "+infinity") {
    return ExtReal::pos_inf();
  }
  if (text == "-inf" || text == "-infinity") return ExtReal::neg_inf();
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || std::isnan(v)) {
    throw std::invalid_argument("not an extended real: '" + text + "'");
  }
  return ExtReal(v);
}

} // namespace sstl
