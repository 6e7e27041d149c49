#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

namespace sstl {

/// Value of the extended real line R* = R u {-inf, +inf}.
///
/// Infinities are carried as an explicit kind rather than as IEEE infinities
/// mixed into data; NaN is rejected at construction.
class ExtReal {
public:
  enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

  constexpr ExtReal() noexcept = default;

  /// Accepts IEEE infinities and maps them onto the matching kind.
  /// Throws std::domain_error on NaN.
  explicit ExtReal(double value);

  static constexpr ExtReal pos_inf() noexcept { return ExtReal(Kind::PosInf); }
  static constexpr ExtReal neg_inf() noexcept { return ExtReal(Kind::NegInf); }

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  constexpr bool is_pos_inf() const noexcept { return kind_ == Kind::PosInf; }
  constexpr bool is_neg_inf() const noexcept { return kind_ == Kind::NegInf; }

  /// Finite payload; only meaningful when is_finite().
  constexpr double finite_value() const noexcept { return value_; }

  /// IEEE view, with infinities mapped to +-HUGE_VAL.
  constexpr double to_double() const noexcept {
    switch (kind_) {
      case Kind::NegInf: return -std::numeric_limits<double>::infinity();
      case Kind::PosInf: return std::numeric_limits<double>::infinity();
      default: return value_;
    }
  }

  /// -1, 0 or +1.
  constexpr int sign() const noexcept {
    if (kind_ == Kind::NegInf) return -1;
    if (kind_ == Kind::PosInf) return 1;
    return (value_ > 0) - (value_ < 0);
  }

  constexpr ExtReal operator-() const noexcept {
    switch (kind_) {
      case Kind::NegInf: return pos_inf();
      case Kind::PosInf: return neg_inf();
      default: return ExtReal(Kind::Finite, value_ == 0.0 ? 0.0 : -value_);
    }
  }

  constexpr std::strong_ordering operator<=>(const ExtReal& other) const noexcept {
    if (kind_ != other.kind_) return kind_ <=> other.kind_;
    if (kind_ != Kind::Finite) return std::strong_ordering::equal;
    if (value_ < other.value_) return std::strong_ordering::less;
    if (value_ > other.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  constexpr bool operator==(const ExtReal& other) const noexcept {
    return (*this <=> other) == std::strong_ordering::equal;
  }

private:
  constexpr explicit ExtReal(Kind kind, double value = 0.0) noexcept
      : kind_(kind), value_(value) {}

  Kind kind_ = Kind::Finite;
  double value_ = 0.0;
};

constexpr ExtReal min(const ExtReal& a, const ExtReal& b) noexcept { return b < a ? b : a; }
constexpr ExtReal max(const ExtReal& a, const ExtReal& b) noexcept { return a < b ? b : a; }

/// "inf", "-inf" or the shortest round-trip decimal form.
std::string to_string(const ExtReal& value);

/// Inverse of to_string; also accepts "+inf", "infinity" and any strtod number.
ExtReal parse_ext_real(const std::string& text);

} // namespace sstl
