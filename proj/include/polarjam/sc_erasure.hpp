#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polarjam/channel.hpp"
#include "polarjam/errors.hpp"

namespace polarjam {

// Three-valued belief carried by the successive cancellation recursion over
// erasure observations. For erasure channels every intermediate posterior is
// exactly 0, 1/2 or 1, so beliefs stay hard-or-erased and the recursion is
// the exact Bayes posterior.
enum class Belief : std::uint8_t { Zero = 0, One = 1, Erased = 2 };

inline Belief to_belief(BecSymbol s) {
  switch (s) {
    case BecSymbol::Zero: return Belief::Zero;
    case BecSymbol::One: return Belief::One;
    default: return Belief::Erased;
  }
}

// Successive cancellation over one polar transform, exact for erasure
// observations. Works one bit at a time: query the belief of the next
// u index, then push the decided (or externally supplied) value.
//
// Each tree node memoizes its latest pair of child messages, which makes a
// full decode O(N log N). A pushed value that contradicts a known belief is
// either thrown (strict mode) or recorded, in which case opposing certain
// messages cancel to Erased, matching the limit of a soft decoder.
class ErasureScEngine {
 public:
  ErasureScEngine(const std::vector<BecSymbol>& obs, bool strict)
      : strict_(strict) {
    N_ = obs.size();
    n_ = log2_exact(N_);
    obs_.resize(N_);
    for (std::size_t i = 0; i < N_; ++i) obs_[i] = to_belief(obs[i]);
    decided_.assign(n_ + 1, std::vector<std::uint8_t>(N_, 0));
    memo_idx_.resize(n_ + 1);
    memo_val_.resize(n_ + 1);
    for (int l = 0; l <= n_; ++l) {
      memo_idx_[l].assign(std::size_t{1} << l, -1);
      memo_val_[l].assign(std::size_t{1} << l, Belief::Erased);
    }
  }

  std::size_t size() const { return N_; }
  std::size_t cursor() const { return cursor_; }
  bool done() const { return cursor_ == N_; }

  Belief next_belief() { return query(0, 0, cursor_); }

  // P(next bit = 0 | observations, pushed prefix).
  double next_posterior_p0() {
    switch (next_belief()) {
      case Belief::Zero: return 1.0;
      case Belief::One: return 0.0;
      default: return 0.5;
    }
  }

  void push_next(int bit) {
    const Belief b = next_belief();
    if (b != Belief::Erased && static_cast<int>(b) != (bit & 1)) {
      if (strict_)
        throw ContradictionError("prefix bit " + std::to_string(cursor_) +
                                 " has posterior 0 for the pushed value");
      if (first_contradiction_ < 0)
        first_contradiction_ = static_cast<std::int64_t>(cursor_);
      ++contradictions_;
    }
    push(0, 0, cursor_, bit & 1);
    ++cursor_;
  }

  std::int64_t first_contradiction() const { return first_contradiction_; }
  std::size_t contradiction_count() const { return contradictions_; }

 private:
  Belief check_combine(Belief a, Belief b) const {
    if (a == Belief::Erased || b == Belief::Erased) return Belief::Erased;
    return static_cast<Belief>(static_cast<int>(a) ^ static_cast<int>(b));
  }

  Belief var_combine(Belief a, Belief b, int u_even) {
    // The odd bit equals child B's element directly, and A's element xor
    // the already-decided even bit.
    const bool a_known = a != Belief::Erased;
    const bool b_known = b != Belief::Erased;
    const int from_a = a_known ? (static_cast<int>(a) ^ u_even) : 0;
    if (a_known && b_known) {
      if (from_a != static_cast<int>(b)) {
        if (strict_)
          throw ContradictionError("conflicting certain messages inside SC");
        if (first_contradiction_ < 0)
          first_contradiction_ = static_cast<std::int64_t>(cursor_);
        ++contradictions_;
        return Belief::Erased;
      }
      return b;
    }
    if (b_known) return b;
    if (a_known) return static_cast<Belief>(from_a);
    return Belief::Erased;
  }

  Belief query(int level, std::size_t node, std::size_t i) {
    if (memo_idx_[level][node] == static_cast<std::int64_t>(i))
      return memo_val_[level][node];
    Belief res;
    if (level == n_) {
      res = obs_[node];
    } else {
      const std::size_t p = i >> 1;
      const Belief a = query(level + 1, 2 * node, p);
      const Belief b = query(level + 1, 2 * node + 1, p);
      if ((i & 1) == 0) {
        res = check_combine(a, b);
      } else {
        const std::size_t width = N_ >> level;
        const int u_even = decided_[level][node * width + i - 1];
        res = var_combine(a, b, u_even);
      }
    }
    memo_idx_[level][node] = static_cast<std::int64_t>(i);
    memo_val_[level][node] = res;
    return res;
  }

  void push(int level, std::size_t node, std::size_t i, int bit) {
    const std::size_t width = N_ >> level;
    decided_[level][node * width + i] = static_cast<std::uint8_t>(bit);
    if (level < n_ && (i & 1)) {
      const std::size_t p = i >> 1;
      const int u_even = decided_[level][node * width + i - 1];
      push(level + 1, 2 * node, p, u_even ^ bit);
      push(level + 1, 2 * node + 1, p, bit);
    }
  }

  bool strict_;
  int n_ = 0;
  std::size_t N_ = 0;
  std::size_t cursor_ = 0;
  std::size_t contradictions_ = 0;
  std::int64_t first_contradiction_ = -1;
  std::vector<Belief> obs_;
  std::vector<std::vector<std::uint8_t>> decided_;
  std::vector<std::vector<std::int64_t>> memo_idx_;
  std::vector<std::vector<Belief>> memo_val_;
};

// Exact posterior P(u_i = 0 | y, u_prefix) for the next undetermined index.
// Throws ContradictionError if the prefix has probability zero.
inline double sc_posterior_legit(const std::vector<BecSymbol>& y_reduced,
                                 const std::vector<std::uint8_t>& u_prefix) {
  if (u_prefix.size() >= y_reduced.size())
    throw InvalidInputError("sc_posterior_legit: prefix must be shorter than block");
  ErasureScEngine eng(y_reduced, /*strict=*/true);
  for (auto b : u_prefix) eng.push_next(b);
  return eng.next_posterior_p0();
}

}  // namespace polarjam
