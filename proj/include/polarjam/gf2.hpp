#pragma once

#include <cstdint>
#include <vector>

#include "polarjam/bits.hpp"

namespace polarjam {

// pi(i) = i's n-bit binary representation reversed. An involution.
inline std::vector<std::uint32_t> bit_reversal_permutation(int n) {
  if (n < 0) throw InvalidInputError("bit_reversal_permutation: n must be >= 0");
  const std::size_t N = std::size_t{1} << n;
  std::vector<std::uint32_t> perm(N);
  for (std::size_t i = 0; i < N; ++i) {
    std::uint32_t r = 0;
    for (int b = 0; b < n; ++b) r |= ((i >> b) & 1u) << (n - 1 - b);
    perm[i] = r;
  }
  return perm;
}

namespace detail {

// Mask selecting positions j with (j mod 2h) < h, for h < 64.
inline std::uint64_t butterfly_mask(unsigned h) {
  switch (h) {
    case 1: return 0x5555555555555555ULL;
    case 2: return 0x3333333333333333ULL;
    case 4: return 0x0F0F0F0F0F0F0F0FULL;
    case 8: return 0x00FF00FF00FF00FFULL;
    case 16: return 0x0000FFFF0000FFFFULL;
    case 32: return 0x00000000FFFFFFFFULL;
    default: return 0;
  }
}

// In-place x <- x * F^{(x) n} on the packed words (dense butterfly).
inline void fkron_inplace(std::vector<std::uint64_t>& w, std::size_t N) {
  for (std::size_t h = 1; h < N; h <<= 1) {
    if (h < 64) {
      const std::uint64_t m = butterfly_mask(static_cast<unsigned>(h));
      for (auto& word : w) word ^= (word >> h) & m;
    } else {
      const std::size_t hw = h / 64;
      for (std::size_t base = 0; base < w.size(); base += 2 * hw)
        for (std::size_t j = 0; j < hw; ++j) w[base + j] ^= w[base + j + hw];
    }
  }
}

}  // namespace detail

// x = u * G_N over GF(2), with G_N = B_N F^{(x) n}. Self-inverse.
inline BinaryBlock polar_transform(const BinaryBlock& u) {
  const std::size_t N = u.size();
  const int n = log2_exact(N);
  BinaryBlock x(N);
  if (n == 0) {
    x.set(0, u.get(0));
    return x;
  }
  const auto perm = bit_reversal_permutation(n);
  for (std::size_t i = 0; i < N; ++i) x.set(i, u.get(perm[i]));
  detail::fkron_inplace(x.words(), N);
  x.mask_tail();
  return x;
}

}  // namespace polarjam
