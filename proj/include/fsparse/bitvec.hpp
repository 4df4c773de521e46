#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fsparse {

/// Fixed-length vector over GF(2), packed 64 coordinates per word.
///
/// Coordinate i lives in bit (i % 64) of word (i / 64). The textual form
/// writes coordinate 0 first, so "10" is e_1 in a 2-dimensional space.
/// Integer indices (truth-table positions, character ids) use the same
/// convention with coordinate 0 as the most significant bit.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t len);

  static BitVec from_string(std::string_view bits);
  static BitVec from_index(std::uint64_t index, std::size_t len);
  static BitVec unit(std::size_t len, std::size_t i);

  std::size_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }

  bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value = true) noexcept;
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  /// Inner product mod 2. Both operands must have the same length.
  bool dot(const BitVec& other) const;
  BitVec& operator^=(const BitVec& other);
  friend BitVec operator^(BitVec lhs, const BitVec& rhs) { return lhs ^= rhs; }

  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  std::size_t popcount() const noexcept;
  std::optional<std::size_t> first_set() const noexcept;

  /// MSB-first index; requires size() <= 64.
  std::uint64_t to_index() const;
  std::string to_string() const;

  BitVec head(std::size_t count) const;
  BitVec padded(std::size_t len) const;
  BitVec erased(std::size_t i) const;
  BitVec inserted(std::size_t i, bool value) const;

  friend bool operator==(const BitVec&, const BitVec&) = default;
  /// Shorter vectors first; equal lengths compare like their text forms.
  friend std::strong_ordering operator<=>(const BitVec& a, const BitVec& b) noexcept;

 private:
  std::size_t len_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace fsparse
