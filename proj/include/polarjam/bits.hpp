#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "polarjam/errors.hpp"
#include "polarjam/rng.hpp"

namespace polarjam {

// Packed bit vector; carrier for the u, c, v, x sequences. The semantics are
// defined purely by the bit sequence, the 64-bit word layout is internal.
class BinaryBlock {
 public:
  BinaryBlock() = default;
  explicit BinaryBlock(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  BinaryBlock(std::initializer_list<int> bits) : BinaryBlock(bits.size()) {
    std::size_t i = 0;
    for (int b : bits) set(i++, b & 1);
  }

  static BinaryBlock from_bits(const std::vector<std::uint8_t>& bits) {
    BinaryBlock b(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) b.set(i, bits[i] & 1);
    return b;
  }

  static BinaryBlock random(std::size_t n, Rng& rng) {
    BinaryBlock b(n);
    for (auto& w : b.words_) w = rng.next_u64();
    b.mask_tail();
    return b;
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  int get(std::size_t i) const {
    return static_cast<int>((words_[i >> 6] >> (i & 63)) & 1u);
  }
  void set(std::size_t i, int bit) {
    const std::uint64_t m = 1ULL << (i & 63);
    if (bit)
      words_[i >> 6] |= m;
    else
      words_[i >> 6] &= ~m;
  }

  BinaryBlock& operator^=(const BinaryBlock& o) {
    if (o.size_ != size_) throw InvalidInputError("BinaryBlock xor: length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  friend BinaryBlock operator^(BinaryBlock a, const BinaryBlock& b) { return a ^= b; }

  bool operator==(const BinaryBlock& o) const {
    return size_ == o.size_ && words_ == o.words_;
  }
  bool operator!=(const BinaryBlock& o) const { return !(*this == o); }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  std::vector<std::uint8_t> to_bits() const {
    std::vector<std::uint8_t> v(size_);
    for (std::size_t i = 0; i < size_; ++i) v[i] = static_cast<std::uint8_t>(get(i));
    return v;
  }

  // Hex, low index first within each nibble group; round-trips exactly.
  std::string to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve((size_ + 3) / 4);
    for (std::size_t i = 0; i < size_; i += 4) {
      int nib = 0;
      for (std::size_t j = 0; j < 4 && i + j < size_; ++j) nib |= get(i + j) << j;
      s.push_back(digits[nib]);
    }
    return s;
  }

  static BinaryBlock from_hex(const std::string& s, std::size_t n) {
    BinaryBlock b(n);
    if (s.size() != (n + 3) / 4)
      throw InvalidInputError("hex string length does not match bit count");
    for (std::size_t k = 0; k < s.size(); ++k) {
      char c = s[k];
      int nib;
      if (c >= '0' && c <= '9') nib = c - '0';
      else if (c >= 'a' && c <= 'f') nib = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') nib = c - 'A' + 10;
      else throw InvalidInputError("invalid hex digit");
      for (std::size_t j = 0; j < 4 && 4 * k + j < n; ++j)
        b.set(4 * k + j, (nib >> j) & 1);
    }
    return b;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

  void mask_tail() {
    if (size_ & 63) words_.back() &= (~0ULL >> (64 - (size_ & 63)));
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline int log2_exact(std::size_t n) {
  if (!is_power_of_two(n)) throw InvalidInputError("length is not a power of two");
  return std::countr_zero(n);
}

}  // namespace polarjam
