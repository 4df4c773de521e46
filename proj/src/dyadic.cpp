#include "fsparse/dyadic.hpp"

#include <cmath>
#include <limits>

#include "fsparse/error.hpp"

namespace fsparse {

namespace {

using Wide = __int128;

std::int64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw Error(Errc::Overflow, "dyadic numerator exceeds 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

// Shifts v left by `shift` bits, checking that nothing falls off.
Wide shift_up(Wide v, int shift) {
  if (shift >= 126) {
    if (v == 0) return 0;
    throw Error(Errc::Overflow, "dyadic alignment shift too large");
  }
  const Wide shifted = v * (Wide{1} << shift);
  if (shifted / (Wide{1} << shift) != v) throw Error(Errc::Overflow, "dyadic alignment overflow");
  return shifted;
}

}  // namespace

Dyadic::Dyadic(std::int64_t num, int log2_den) : num_(num), log2_den_(log2_den) {
  if (num_ == 0) {
    log2_den_ = 0;
    return;
  }
  while (log2_den_ > 0 && (num_ & 1) == 0) {
    num_ /= 2;
    --log2_den_;
  }
  if (log2_den_ < 0) {
    num_ = narrow(shift_up(num_, -log2_den_));
    log2_den_ = 0;
  }
}

double Dyadic::to_double() const noexcept {
  return std::ldexp(static_cast<double>(num_), -log2_den_);
}

std::string Dyadic::to_string() const {
  if (log2_den_ == 0) return std::to_string(num_);
  if (log2_den_ >= 63) {
    return std::to_string(num_) + "/2^" + std::to_string(log2_den_);
  }
  return std::to_string(num_) + "/" + std::to_string(std::uint64_t{1} << log2_den_);
}

bool Dyadic::is_multiple_of_pow2(int exponent) const noexcept {
  if (num_ == 0) return true;
  // value = num * 2^-d with num odd when d > 0.
  if (exponent >= 0) {
    if (log2_den_ > 0) return false;
    const int tz = __builtin_ctzll(static_cast<unsigned long long>(num_));
    return tz >= exponent;
  }
  return log2_den_ <= -exponent;
}

Dyadic Dyadic::operator-() const {
  if (num_ == std::numeric_limits<std::int64_t>::min()) throw Error(Errc::Overflow, "negation");
  return Dyadic(-num_, log2_den_);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  const int d = std::max(a.log2_den_, b.log2_den_);
  const Wide x = shift_up(a.num_, d - a.log2_den_);
  const Wide y = shift_up(b.num_, d - b.log2_den_);
  Wide sum = x + y;
  int den = d;
  while (den > 0 && sum != 0 && (sum & 1) == 0) {
    sum /= 2;
    --den;
  }
  return Dyadic(narrow(sum), den);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(narrow(Wide{a.num_} * Wide{b.num_}), a.log2_den_ + b.log2_den_);
}

Dyadic Dyadic::scaled(int exponent) const { return Dyadic(num_, log2_den_ - exponent); }

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const int d = std::max(a.log2_den_, b.log2_den_);
  const Wide x = shift_up(a.num_, d - a.log2_den_);
  const Wide y = shift_up(b.num_, d - b.log2_den_);
  return x < y ? std::strong_ordering::less
               : (x > y ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Dyadic Dyadic::round_to_grid(double x, int exponent) {
  const double steps = std::round(std::ldexp(x, -exponent));
  if (!std::isfinite(steps) || std::fabs(steps) > 0x1.0p62) {
    throw Error(Errc::Overflow, "value too large for grid rounding");
  }
  return Dyadic(static_cast<std::int64_t>(steps), -exponent);
}

}  // namespace fsparse
