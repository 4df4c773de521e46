#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace fsparse {

/// Exact rational num / 2^log2_den.
///
/// Normal form: log2_den >= 0, and num is odd whenever log2_den > 0; zero is
/// 0/2^0. Arithmetic throws Error(Overflow) instead of wrapping.
class Dyadic {
 public:
  constexpr Dyadic() = default;
  Dyadic(std::int64_t num, int log2_den = 0);

  std::int64_t num() const noexcept { return num_; }
  int log2_den() const noexcept { return log2_den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return log2_den_ == 0; }
  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }
  double to_double() const noexcept;
  /// "p/q" with q a power of two, or "p" for integers.
  std::string to_string() const;

  /// True iff this is an integer multiple of 2^exponent.
  bool is_multiple_of_pow2(int exponent) const noexcept;

  Dyadic operator-() const;
  Dyadic abs() const { return num_ < 0 ? -*this : *this; }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic& operator+=(const Dyadic& b) { return *this = *this + b; }
  Dyadic& operator-=(const Dyadic& b) { return *this = *this - b; }
  Dyadic& operator*=(const Dyadic& b) { return *this = *this * b; }

  /// Multiplies by 2^exponent (exponent may be negative).
  Dyadic scaled(int exponent) const;

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  /// Nearest multiple of 2^exponent to x; ties round away from zero.
  static Dyadic round_to_grid(double x, int exponent);

 private:
  std::int64_t num_ = 0;
  int log2_den_ = 0;
};

}  // namespace fsparse
