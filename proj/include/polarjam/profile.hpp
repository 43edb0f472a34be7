#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "polarjam/errors.hpp"

namespace polarjam {

// Per-index Bhattacharyya values, exact or Monte-Carlo with error bars.
struct ReliabilityProfile {
  enum class Kind { Exact, MonteCarlo };

  std::vector<double> z;
  Kind kind = Kind::Exact;
  std::vector<double> stderr_z;  // Monte-Carlo only, same length as z
  std::uint64_t trials = 0;      // Monte-Carlo only

  std::size_t size() const { return z.size(); }

  // Kahan summation; the conservation check needs ~1e-15 at N = 2^20.
  double mean() const {
    double sum = 0.0, comp = 0.0;
    for (double v : z) {
      const double t = v - comp;
      const double s = sum + t;
      comp = (s - sum) - t;
      sum = s;
    }
    return z.empty() ? 0.0 : sum / static_cast<double>(z.size());
  }

  // Symmetric capacity proxy for erasure-type profiles.
  double capacity() const { return 1.0 - mean(); }
};

// delta_N = 2^(-N^beta).
inline double delta_threshold(int n, double beta) {
  if (n < 0) throw InvalidInputError("delta_threshold: n must be >= 0");
  if (!(beta > 0.0 && beta < 0.5))
    throw InvalidInputError("delta_threshold: beta must be in (0, 1/2)");
  return std::exp2(-std::exp2(static_cast<double>(n) * beta));
}

// Exact BEC recursion from Z_1 = eps:
//   Z(2i)   = 2 Z - Z^2   (minus branch)
//   Z(2i+1) = Z^2         (plus branch)
// Index order matches the decoder's u order (pinned by the codec tests).
inline ReliabilityProfile bec_z_profile(int n, double eps) {
  if (n < 0) throw InvalidInputError("bec_z_profile: n must be >= 0");
  if (!(eps >= 0.0 && eps <= 1.0))
    throw InvalidInputError("bec_z_profile: eps must be in [0,1]");
  std::vector<double> z{eps};
  for (int level = 0; level < n; ++level) {
    std::vector<double> next(z.size() * 2);
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double v = z[i];
      next[2 * i] = std::fma(-v, v, 2.0 * v);  // one rounding for 2v - v^2
      next[2 * i + 1] = v * v;
    }
    z = std::move(next);
  }
  ReliabilityProfile p;
  p.z = std::move(z);
  p.kind = ReliabilityProfile::Kind::Exact;
  return p;
}

// {high, low, mid} as defined by the polarized-set thresholds.
struct PolarizedSetFamily {
  std::vector<std::uint32_t> high;  // Z >= 1 - delta
  std::vector<std::uint32_t> low;   // Z <= delta
  std::vector<std::uint32_t> mid;   // the remainder
};

inline PolarizedSetFamily classify_sets(const ReliabilityProfile& profile,
                                        double delta) {
  if (!(delta > 0.0 && delta < 0.5))
    throw InvalidInputError("classify_sets: delta must be in (0, 1/2)");
  PolarizedSetFamily f;
  for (std::uint32_t i = 0; i < profile.z.size(); ++i) {
    const double v = profile.z[i];
    if (v >= 1.0 - delta)
      f.high.push_back(i);
    else if (v <= delta)
      f.low.push_back(i);
    else
      f.mid.push_back(i);
  }
  return f;
}

// Corner-point decomposition of the adder-erasure MAC at Eve. The user
// decoded first sees a BEC((1+eps)/2): outputs 0 and 2 reveal its bit,
// output 1 and erasures say nothing. The user decoded second has the
// other codeword resolved and sees a plain BEC(eps).
inline std::pair<ReliabilityProfile, ReliabilityProfile> eve_corner_profiles(
    int n, double epse, int first_user) {
  if (first_user != 1 && first_user != 2)
    throw InvalidInputError("eve_corner_profiles: first_user must be 1 or 2");
  if (!(epse >= 0.0 && epse <= 1.0))
    throw InvalidInputError("eve_corner_profiles: epse must be in [0,1]");
  return {bec_z_profile(n, (1.0 + epse) / 2.0), bec_z_profile(n, epse)};
}

}  // namespace polarjam
