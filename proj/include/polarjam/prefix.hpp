#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "polarjam/bits.hpp"
#include "polarjam/errors.hpp"
#include "polarjam/gf2.hpp"
#include "polarjam/profile.hpp"
#include "polarjam/rng.hpp"

namespace polarjam {

// Channel prefixing map P_{X|C}: a 2x2 stochastic table applied per position.
struct PrefixTable {
  // p[c][x] = P(X = x | C = c)
  std::array<std::array<double, 2>, 2> p{{{1.0, 0.0}, {0.0, 1.0}}};

  void validate() const {
    for (int c = 0; c < 2; ++c) {
      if (p[c][0] < 0.0 || p[c][1] < 0.0 ||
          std::abs(p[c][0] + p[c][1] - 1.0) > 1e-12)
        throw InvalidInputError("PrefixTable: rows must be distributions");
    }
  }

  bool is_identity() const { return p[0][0] == 1.0 && p[1][1] == 1.0; }
};

// Exact successive cancellation posterior over one polar transform with
// independent per-leaf priors: P(V^i | C^{1:N}, V^{1:i-1}) where V = X G_N
// and X_t ~ P_{X|C}(.|c_t) independently. Probability-pair messages,
// normalized at every combine.
class SoftScEngine {
 public:
  SoftScEngine(std::vector<std::array<double, 2>> leaf_priors)
      : leaf_(std::move(leaf_priors)) {
    N_ = leaf_.size();
    n_ = log2_exact(N_);
    decided_.assign(n_ + 1, std::vector<std::uint8_t>(N_, 0));
    memo_idx_.resize(n_ + 1);
    memo_val_.resize(n_ + 1);
    for (int l = 0; l <= n_; ++l) {
      memo_idx_[l].assign(std::size_t{1} << l, -1);
      memo_val_[l].assign(std::size_t{1} << l, {0.5, 0.5});
    }
  }

  std::size_t size() const { return N_; }
  std::size_t cursor() const { return cursor_; }

  double next_posterior_p0() { return query(0, 0, cursor_)[0]; }

  void push_next(int bit) {
    push(0, 0, cursor_, bit & 1);
    ++cursor_;
  }

 private:
  using Msg = std::array<double, 2>;

  static Msg normalize(Msg m) {
    const double s = m[0] + m[1];
    if (s <= 0.0)
      throw ContradictionError("soft SC: zero-probability configuration");
    return {m[0] / s, m[1] / s};
  }

  Msg query(int level, std::size_t node, std::size_t i) {
    if (memo_idx_[level][node] == static_cast<std::int64_t>(i))
      return memo_val_[level][node];
    Msg res;
    if (level == n_) {
      res = leaf_[node];
    } else {
      const std::size_t p = i >> 1;
      const Msg a = query(level + 1, 2 * node, p);
      const Msg b = query(level + 1, 2 * node + 1, p);
      if ((i & 1) == 0) {
        res = normalize({a[0] * b[0] + a[1] * b[1], a[0] * b[1] + a[1] * b[0]});
      } else {
        const std::size_t width = N_ >> level;
        const int ue = decided_[level][node * width + i - 1];
        res = normalize({a[ue] * b[0], a[1 ^ ue] * b[1]});
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
      const int ue = decided_[level][node * width + i - 1];
      push(level + 1, 2 * node, p, ue ^ bit);
      push(level + 1, 2 * node + 1, p, bit);
    }
  }

  int n_ = 0;
  std::size_t N_ = 0;
  std::size_t cursor_ = 0;
  std::vector<Msg> leaf_;
  std::vector<std::vector<std::uint8_t>> decided_;
  std::vector<std::vector<std::int64_t>> memo_idx_;
  std::vector<std::vector<Msg>> memo_val_;
};

// A prefixing configuration ready for encoding: the table plus the
// high-entropy set H_{X|C} of v positions that take fresh uniform bits.
struct PrefixModel {
  PrefixTable table;
  std::vector<std::uint32_t> high_set;  // ascending

  bool is_identity() const { return table.is_identity() && high_set.empty(); }
};

inline std::vector<std::array<double, 2>> prefix_leaf_priors(
    const PrefixTable& table, const BinaryBlock& c) {
  std::vector<std::array<double, 2>> priors(c.size());
  for (std::size_t t = 0; t < c.size(); ++t) priors[t] = table.p[c.get(t)];
  return priors;
}

// Draw x given the auxiliary codeword c: positions in H_{X|C} get uniform
// bits, the rest follow the conditional random mapping.
inline std::pair<BinaryBlock, BinaryBlock> sample_prefixed_codeword(
    const BinaryBlock& c, const PrefixModel& model, Rng& rng) {
  model.table.validate();
  const std::size_t N = c.size();
  SoftScEngine eng(prefix_leaf_priors(model.table, c));
  BinaryBlock v(N);
  std::size_t hi = 0;
  for (std::size_t i = 0; i < N; ++i) {
    int bit;
    if (hi < model.high_set.size() && model.high_set[hi] == i) {
      bit = rng.next_bit();
      ++hi;
    } else {
      const double p0 = eng.next_posterior_p0();
      bit = rng.next_unit() < p0 ? 0 : 1;
    }
    eng.push_next(bit);
    v.set(i, bit);
  }
  return {v, polar_transform(v)};
}

// Monte-Carlo estimate of Z(V^i | C^{1:N}, V^{1:i-1}) and the resulting
// H_{X|C} set at threshold 1 - delta.
inline PrefixModel estimate_prefix_model(const PrefixTable& table, int n,
                                         double delta, std::uint64_t trials,
                                         const Rng& rng) {
  table.validate();
  if (trials < 1) throw InvalidInputError("estimate_prefix_model: trials >= 1");
  const std::size_t N = std::size_t{1} << n;
  std::vector<double> zsum(N, 0.0);
  Rng r = rng.stream("prefix_model");
  for (std::uint64_t t = 0; t < trials; ++t) {
    BinaryBlock c = BinaryBlock::random(N, r);
    BinaryBlock x(N);
    for (std::size_t i = 0; i < N; ++i)
      x.set(i, r.next_unit() < table.p[c.get(i)][0] ? 0 : 1);
    BinaryBlock v = polar_transform(x);
    SoftScEngine eng(prefix_leaf_priors(table, c));
    for (std::size_t i = 0; i < N; ++i) {
      const double p0 = eng.next_posterior_p0();
      zsum[i] += 2.0 * std::sqrt(p0 * (1.0 - p0));
      eng.push_next(v.get(i));
    }
  }
  PrefixModel m;
  m.table = table;
  for (std::uint32_t i = 0; i < N; ++i)
    if (zsum[i] / static_cast<double>(trials) >= 1.0 - delta)
      m.high_set.push_back(i);
  return m;
}

}  // namespace polarjam
