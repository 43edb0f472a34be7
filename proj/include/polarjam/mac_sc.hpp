#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "polarjam/channel.hpp"
#include "polarjam/errors.hpp"
#include "polarjam/path.hpp"

namespace polarjam {

// Packed bitsets of the linear functionals u^i = sum_t x^t G_{t,i}, i.e.
// the columns of G_N = B_N F^{(x) n}. Column i has support
// {t : t superset-of rev(i)} since F_{a,b} = [b & ~a == 0] and bit reversal
// preserves the subset order. Shared across Monte-Carlo trials; N^2 bits,
// so capped at n <= 14.
class GnRowTable {
 public:
  static std::shared_ptr<const GnRowTable> get(int n) {
    if (n < 0) throw InvalidInputError("GnRowTable: n must be >= 0");
    if (n > 14)
      throw TooLargeError("GnRowTable: n > 14 exceeds the dense row-table cap");
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const GnRowTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto t = std::shared_ptr<const GnRowTable>(new GnRowTable(n));
    cache.emplace(n, t);
    return t;
  }

  int n() const { return n_; }
  std::size_t block_length() const { return N_; }
  std::size_t words_per_row() const { return words_; }
  const std::uint64_t* row(std::size_t i) const { return &bits_[i * words_]; }

 private:
  explicit GnRowTable(int n) : n_(n), N_(std::size_t{1} << n) {
    words_ = (N_ + 63) / 64;
    bits_.assign(N_ * words_, 0);
    const std::size_t full = N_ - 1;
    for (std::size_t i = 0; i < N_; ++i) {
      std::size_t rv = 0;
      for (int b = 0; b < n_; ++b) rv |= ((i >> b) & 1u) << (n_ - 1 - b);
      std::uint64_t* r = &bits_[i * words_];
      // supermasks of rv: rv | s over all submasks s of its complement
      const std::size_t comp = full & ~rv;
      std::size_t sub = comp;
      while (true) {
        const std::size_t t = rv | sub;
        r[t >> 6] |= 1ULL << (t & 63);
        if (sub == 0) break;
        sub = (sub - 1) & comp;
      }
    }
  }

  int n_;
  std::size_t N_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

// Incremental GF(2) affine-subspace tracker. Under uniform inputs and the
// adder-erasure MAC the joint posterior is always uniform over an affine
// subspace, so every conditional bit posterior is exactly 0, 1/2 or 1.
class Gf2AffineTracker {
 public:
  explicit Gf2AffineTracker(std::size_t nvars)
      : nvars_(nvars), words_((nvars + 63) / 64) {
    has_pivot_.assign(nvars_, 0);
    pivot_rhs_.assign(nvars_, 0);
    pivot_rows_.resize(nvars_);
  }

  std::size_t words_per_row() const { return words_; }

  // Reduce (row, rhs) in place against the basis. Returns true if the row
  // vanished (the functional is determined; value in rhs).
  bool reduce(std::vector<std::uint64_t>& row, int& rhs) const {
    while (true) {
      const std::int64_t h = leading_bit(row);
      if (h < 0) return true;
      if (!has_pivot_[static_cast<std::size_t>(h)]) return false;
      const auto& prow = pivot_rows_[static_cast<std::size_t>(h)];
      for (std::size_t w = 0; w < words_; ++w) row[w] ^= prow[w];
      rhs ^= pivot_rhs_[static_cast<std::size_t>(h)];
    }
  }

  // Condition on functional(row) = value. The row must already be reduced;
  // a reduced-to-zero row must agree with its determined value.
  void insert_reduced(std::vector<std::uint64_t> row, int rhs) {
    const std::int64_t h = leading_bit(row);
    if (h < 0) throw ContradictionError("conditioning on a determined functional");
    has_pivot_[static_cast<std::size_t>(h)] = 1;
    pivot_rhs_[static_cast<std::size_t>(h)] = static_cast<std::uint8_t>(rhs & 1);
    pivot_rows_[static_cast<std::size_t>(h)] = std::move(row);
  }

  // Unit or two-variable constraint helpers (observation rows).
  void constrain_var(std::size_t v, int value) {
    std::vector<std::uint64_t> row(words_, 0);
    row[v >> 6] |= 1ULL << (v & 63);
    int rhs = value & 1;
    if (reduce(row, rhs)) {
      if (rhs != 0) throw ContradictionError("inconsistent unit constraint");
      return;
    }
    insert_reduced(std::move(row), rhs);
  }
  void constrain_pair_xor(std::size_t a, std::size_t b, int value) {
    std::vector<std::uint64_t> row(words_, 0);
    row[a >> 6] ^= 1ULL << (a & 63);
    row[b >> 6] ^= 1ULL << (b & 63);
    int rhs = value & 1;
    if (reduce(row, rhs)) {
      if (rhs != 0) throw ContradictionError("inconsistent pair constraint");
      return;
    }
    insert_reduced(std::move(row), rhs);
  }

 private:
  std::int64_t leading_bit(const std::vector<std::uint64_t>& row) const {
    for (std::size_t w = words_; w-- > 0;)
      if (row[w]) return static_cast<std::int64_t>(w * 64 + 63 - std::countl_zero(row[w]));
    return -1;
  }

  std::size_t nvars_;
  std::size_t words_;
  std::vector<std::uint8_t> has_pivot_;
  std::vector<std::uint8_t> pivot_rhs_;
  std::vector<std::vector<std::uint64_t>> pivot_rows_;
};

// Joint successive cancellation posterior over a monotone chain rule path:
// exact P(S^k | Y_e^{1:N}, S^{1:k-1}) for the adder-erasure MAC with uniform
// inputs. Variables are the two codewords; path elements are G_N rows
// embedded into the owning user's half.
class MacScEngine {
 public:
  MacScEngine(const MonotonePath& path, const std::vector<MacSymbol>& y)
      : path_(path), N_(path.block_length()) {
    if (y.size() != N_)
      throw InvalidInputError("MacScEngine: observation length != block length");
    table_ = GnRowTable::get(log2_exact(N_));
    occurrence_.assign(2 * N_, 0);
    std::size_t c1 = 0, c2 = 0;
    for (std::size_t k = 0; k < 2 * N_; ++k)
      occurrence_[k] = static_cast<std::uint32_t>(path_.user_at(k) == 1 ? c1++ : c2++);
    tracker_ = std::make_unique<Gf2AffineTracker>(2 * N_);
    for (std::size_t t = 0; t < N_; ++t) {
      switch (y[t]) {
        case MacSymbol::Zero:
          tracker_->constrain_var(t, 0);
          tracker_->constrain_var(N_ + t, 0);
          break;
        case MacSymbol::Two:
          tracker_->constrain_var(t, 1);
          tracker_->constrain_var(N_ + t, 1);
          break;
        case MacSymbol::One:
          tracker_->constrain_pair_xor(t, N_ + t, 1);
          break;
        case MacSymbol::Erased:
          break;
      }
    }
  }

  std::size_t cursor() const { return cursor_; }
  bool done() const { return cursor_ == 2 * N_; }

  // P(S^{cursor} = 0 | y, pushed prefix); exactly 0, 1/2 or 1.
  double posterior_p0() {
    ensure_reduced();
    if (!determined_) return 0.5;
    return value_ == 0 ? 1.0 : 0.0;
  }

  // True if the next path element is already determined by y and the prefix.
  bool next_determined() {
    ensure_reduced();
    return determined_;
  }

  void push(int bit) {
    ensure_reduced();
    if (determined_) {
      if (value_ != (bit & 1))
        throw ContradictionError("path prefix bit " + std::to_string(cursor_) +
                                 " has probability zero");
    } else {
      tracker_->insert_reduced(std::move(reduced_row_), (bit & 1) ^ reduced_rhs_);
    }
    have_reduced_ = false;
    ++cursor_;
  }

 private:
  void ensure_reduced() {
    if (have_reduced_) return;
    if (cursor_ >= 2 * N_) throw InvalidInputError("MacScEngine: past end of path");
    const int user = path_.user_at(cursor_);
    const std::size_t idx = occurrence_[cursor_];
    const std::uint64_t* src = table_->row(idx);
    const std::size_t rw = table_->words_per_row();
    reduced_row_.assign(tracker_->words_per_row(), 0);
    if (user == 1) {
      for (std::size_t w = 0; w < rw; ++w) reduced_row_[w] = src[w];
    } else if (N_ >= 64) {
      const std::size_t off = N_ / 64;
      for (std::size_t w = 0; w < rw; ++w) reduced_row_[off + w] = src[w];
    } else {
      reduced_row_[0] = src[0] << N_;
    }
    int rhs = 0;
    determined_ = tracker_->reduce(reduced_row_, rhs);
    if (determined_)
      value_ = rhs;
    else
      reduced_rhs_ = rhs;
    have_reduced_ = true;
  }

  MonotonePath path_;
  std::size_t N_;
  std::shared_ptr<const GnRowTable> table_;
  std::vector<std::uint32_t> occurrence_;
  std::unique_ptr<Gf2AffineTracker> tracker_;

  std::size_t cursor_ = 0;
  bool have_reduced_ = false;
  bool determined_ = false;
  int value_ = 0;
  int reduced_rhs_ = 0;
  std::vector<std::uint64_t> reduced_row_;
};

// Exact posterior of the next path element given Eve's observations and a
// prefix of path-ordered bits. ContradictionError on a probability-zero
// prefix.
inline double mac_sc_posterior(const MonotonePath& path,
                               const std::vector<MacSymbol>& y,
                               const std::vector<std::uint8_t>& s_prefix) {
  if (s_prefix.size() >= 2 * path.block_length())
    throw InvalidInputError("mac_sc_posterior: prefix must be shorter than 2N");
  MacScEngine eng(path, y);
  for (auto b : s_prefix) eng.push(b);
  return eng.posterior_p0();
}

}  // namespace polarjam
