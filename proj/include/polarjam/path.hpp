#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polarjam/bits.hpp"
#include "polarjam/errors.hpp"

namespace polarjam {

// A monotone chain rule expansion of two users' polarized sequences,
// encoded as the string b_1..b_{2N}: 0 means the next element is drawn
// from user 1's sequence, 1 from user 2's. Any balanced binary string is
// monotone by construction (each user's internal order is preserved).
class MonotonePath {
 public:
  // Default: the N=1 expansion "01".
  MonotonePath() : bits_{0, 1}, n_per_user_(1) {}

  static MonotonePath from_string(const std::string& s) {
    std::vector<std::uint8_t> bits;
    bits.reserve(s.size());
    for (char c : s) {
      if (c != '0' && c != '1')
        throw InvalidInputError("path string must contain only 0 and 1");
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return MonotonePath(std::move(bits));
  }

  explicit MonotonePath(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    std::size_t ones = 0;
    for (auto b : bits_) ones += (b & 1);
    if (bits_.empty() || bits_.size() % 2 != 0 || ones * 2 != bits_.size())
      throw InvalidInputError("path must contain equally many 0s and 1s");
    n_per_user_ = bits_.size() / 2;
  }

  std::size_t block_length() const { return n_per_user_; }  // N
  std::size_t size() const { return bits_.size(); }         // 2N
  int user_at(std::size_t k) const { return bits_[k] + 1; }

  std::string to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = char('0' + bits_[i]);
    return s;
  }

  // f_j(i) = path position of the i-th element of user j (0-based both ways).
  std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> index_maps() const {
    std::vector<std::uint32_t> f1, f2;
    f1.reserve(n_per_user_);
    f2.reserve(n_per_user_);
    for (std::size_t k = 0; k < bits_.size(); ++k)
      (bits_[k] ? f2 : f1).push_back(static_cast<std::uint32_t>(k));
    return {std::move(f1), std::move(f2)};
  }

  // Corner parameter i if the path has the form 0^i 1^N 0^(N-i).
  std::optional<std::size_t> corner_param() const {
    const std::size_t N = n_per_user_;
    std::size_t i = 0;
    while (i < bits_.size() && bits_[i] == 0) ++i;
    if (i > N) return std::nullopt;
    for (std::size_t k = i; k < i + N; ++k)
      if (bits_[k] != 1) return std::nullopt;
    for (std::size_t k = i + N; k < bits_.size(); ++k)
      if (bits_[k] != 0) return std::nullopt;
    return i;
  }

  // A corner proper: one user's sequence entirely before the other's.
  bool is_corner() const {
    auto i = corner_param();
    return i && (*i == 0 || *i == n_per_user_);
  }

  // User decoded first on a corner path (1 if i = N, 2 if i = 0).
  int first_user() const {
    if (!is_corner()) throw UnsupportedPathError("path is not a corner path");
    return *corner_param() == n_per_user_ ? 1 : 2;
  }

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t n_per_user_;
};

// The expansion 0^i 1^N 0^(N-i); i in {0, N} gives the two corner points.
inline MonotonePath make_path(std::size_t i, int n) {
  if (n < 0) throw InvalidInputError("make_path: n must be >= 0");
  const std::size_t N = std::size_t{1} << n;
  if (i > N) throw InvalidInputError("make_path: corner parameter out of range");
  std::vector<std::uint8_t> bits(2 * N, 0);
  for (std::size_t k = i; k < i + N; ++k) bits[k] = 1;
  return MonotonePath(std::move(bits));
}

// l*b: repeat every symbol l times; a monotone chain rule for length l*N.
inline MonotonePath scale_path(const MonotonePath& p, std::size_t l) {
  if (!is_power_of_two(l)) throw InvalidInputError("scale_path: l must be a power of two");
  std::vector<std::uint8_t> bits;
  bits.reserve(p.size() * l);
  for (std::size_t k = 0; k < p.size(); ++k)
    bits.insert(bits.end(), l, static_cast<std::uint8_t>(p.user_at(k) - 1));
  return MonotonePath(std::move(bits));
}

}  // namespace polarjam
