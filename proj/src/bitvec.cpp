#include "fsparse/bitvec.hpp"

#include <bit>

#include "fsparse/error.hpp"

namespace fsparse {

namespace {

std::size_t word_count(std::size_t len) { return (len + 63) / 64; }

void require_same_length(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size()) {
    throw Error(Errc::InvalidArgument, "length mismatch " + std::to_string(a.size()) + " vs " +
                                           std::to_string(b.size()));
  }
}

}  // namespace

BitVec::BitVec(std::size_t len) : len_(len), words_(word_count(len), 0) {}

BitVec BitVec::from_string(std::string_view bits) {
  BitVec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw Error(Errc::ParseError, "bit string contains '" + std::string(1, bits[i]) + "'");
    }
  }
  return v;
}

BitVec BitVec::from_index(std::uint64_t index, std::size_t len) {
  if (len > 64) throw Error(Errc::InvalidArgument, "from_index supports at most 64 coordinates");
  BitVec v(len);
  for (std::size_t i = 0; i < len; ++i) {
    if ((index >> (len - 1 - i)) & 1u) v.set(i);
  }
  return v;
}

BitVec BitVec::unit(std::size_t len, std::size_t i) {
  if (i >= len) throw Error(Errc::IndexOutOfRange, "unit vector index " + std::to_string(i));
  BitVec v(len);
  v.set(i);
  return v;
}

void BitVec::set(std::size_t i, bool value) noexcept {
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

bool BitVec::dot(const BitVec& other) const {
  require_same_length(*this, other);
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
  return (std::popcount(acc) & 1) != 0;
}

BitVec& BitVec::operator^=(const BitVec& other) {
  require_same_length(*this, other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool BitVec::any() const noexcept {
  for (auto w : words_) {
    if (w != 0) return true;
  }
  return false;
}

std::size_t BitVec::popcount() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::optional<std::size_t> BitVec::first_set() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return std::nullopt;
}

std::uint64_t BitVec::to_index() const {
  if (len_ > 64) throw Error(Errc::InvalidArgument, "to_index supports at most 64 coordinates");
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < len_; ++i) index = (index << 1) | (get(i) ? 1u : 0u);
  return index;
}

std::string BitVec::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

BitVec BitVec::head(std::size_t count) const {
  if (count > len_) throw Error(Errc::InvalidArgument, "head longer than vector");
  BitVec v(count);
  for (std::size_t w = 0; w < v.words_.size(); ++w) v.words_[w] = words_[w];
  if (count % 64 != 0 && !v.words_.empty()) {
    v.words_.back() &= (std::uint64_t{1} << (count % 64)) - 1;
  }
  return v;
}

BitVec BitVec::padded(std::size_t len) const {
  if (len < len_) throw Error(Errc::InvalidArgument, "padded length shorter than vector");
  BitVec v(len);
  for (std::size_t w = 0; w < words_.size(); ++w) v.words_[w] = words_[w];
  return v;
}

BitVec BitVec::erased(std::size_t i) const {
  if (i >= len_) throw Error(Errc::IndexOutOfRange, "erase index " + std::to_string(i));
  BitVec v(len_ - 1);
  for (std::size_t j = 0, k = 0; j < len_; ++j) {
    if (j == i) continue;
    if (get(j)) v.set(k);
    ++k;
  }
  return v;
}

BitVec BitVec::inserted(std::size_t i, bool value) const {
  if (i > len_) throw Error(Errc::IndexOutOfRange, "insert index " + std::to_string(i));
  BitVec v(len_ + 1);
  for (std::size_t j = 0, k = 0; k < len_ + 1; ++k) {
    if (k == i) {
      if (value) v.set(k);
      continue;
    }
    if (get(j)) v.set(k);
    ++j;
  }
  return v;
}

std::strong_ordering operator<=>(const BitVec& a, const BitVec& b) noexcept {
  if (auto c = a.len_ <=> b.len_; c != 0) return c;
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    const std::uint64_t diff = a.words_[w] ^ b.words_[w];
    if (diff != 0) {
      const std::uint64_t lowest = diff & (~diff + 1);
      return (a.words_[w] & lowest) != 0 ? std::strong_ordering::greater
                                         : std::strong_ordering::less;
    }
  }
  return std::strong_ordering::equal;
}

}  // namespace fsparse
