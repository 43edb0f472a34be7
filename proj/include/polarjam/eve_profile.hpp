#pragma once

#include <cmath>
#include <cstdint>
#include <future>
#include <vector>

#include "polarjam/bits.hpp"
#include "polarjam/gf2.hpp"
#include "polarjam/mac_sc.hpp"
#include "polarjam/path.hpp"
#include "polarjam/profile.hpp"
#include "polarjam/rng.hpp"

namespace polarjam {

// Bhattacharyya profile of the eavesdropper MAC along a monotone chain rule
// path: z[k] = Z(S^k | Y_e^{1:N}, S^{1:k-1}) over all 2N path positions.
struct EvePathProfile {
  MonotonePath path;
  ReliabilityProfile prof;  // length 2N

  // Pull back to user j's index space through f_j.
  std::vector<double> user_z(int j) const {
    auto maps = path.index_maps();
    const auto& f = (j == 1) ? maps.first : maps.second;
    std::vector<double> z(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) z[i] = prof.z[f[i]];
    return z;
  }
};

// Exact corner-point profile: one user's sequence lies entirely before the
// other's, so the path profile is the concatenation of the two single-user
// BEC profiles from eve_corner_profiles.
inline EvePathProfile eve_path_profile_corner(int n, double epse,
                                              std::size_t corner_i) {
  const std::size_t N = std::size_t{1} << n;
  if (corner_i != 0 && corner_i != N)
    throw UnsupportedPathError(
        "exact eavesdropper profile needs a corner path; use Monte-Carlo");
  MonotonePath path = make_path(corner_i, n);
  const int first = path.first_user();
  auto [pfirst, psecond] = eve_corner_profiles(n, epse, first);
  EvePathProfile e{std::move(path), {}};
  e.prof.kind = ReliabilityProfile::Kind::Exact;
  e.prof.z.resize(2 * N);
  for (std::size_t i = 0; i < N; ++i) {
    e.prof.z[i] = pfirst.z[i];
    e.prof.z[N + i] = psecond.z[i];
  }
  return e;
}

// Monte-Carlo profile for an arbitrary path: per trial, sample both users'
// blocks and Eve's observation, then walk the path with the joint SC
// recursion evaluated at the true sampled prefix. Each position contributes
// 2*sqrt(P0*P1), which for the erasure MAC is the unresolved indicator.
inline EvePathProfile mc_mac_profile(const MonotonePath& path, double epse,
                                     std::uint64_t trials, const Rng& rng) {
  if (trials < 1) throw InvalidInputError("mc_mac_profile: trials must be >= 1");
  if (!(epse >= 0.0 && epse <= 1.0))
    throw InvalidInputError("mc_mac_profile: epse must be in [0,1]");
  const std::size_t N = path.block_length();
  const int n = log2_exact(N);
  (void)GnRowTable::get(n);  // fail fast on the size cap, then share

  constexpr int kChunks = 8;
  auto run_chunk = [&](int chunk, std::uint64_t count) {
    std::vector<std::uint64_t> unresolved(2 * N, 0);
    Rng crng = rng.stream("mc_mac_profile", static_cast<std::uint64_t>(chunk));
    for (std::uint64_t t = 0; t < count; ++t) {
      BinaryBlock u1 = BinaryBlock::random(N, crng);
      BinaryBlock u2 = BinaryBlock::random(N, crng);
      BinaryBlock x1 = polar_transform(u1);
      BinaryBlock x2 = polar_transform(u2);
      auto y = transmit_adder_mac(x1, x2, epse, crng);
      MacScEngine eng(path, y);
      std::size_t c1 = 0, c2 = 0;
      for (std::size_t k = 0; k < 2 * N; ++k) {
        if (!eng.next_determined()) ++unresolved[k];
        const int bit = path.user_at(k) == 1 ? u1.get(c1++) : u2.get(c2++);
        eng.push(bit);
      }
    }
    return unresolved;
  };

  std::vector<std::future<std::vector<std::uint64_t>>> futs;
  std::uint64_t base = trials / kChunks, extra = trials % kChunks;
  for (int c = 0; c < kChunks; ++c) {
    const std::uint64_t cnt = base + (static_cast<std::uint64_t>(c) < extra ? 1 : 0);
    futs.push_back(std::async(std::launch::async, run_chunk, c, cnt));
  }
  std::vector<std::uint64_t> unresolved(2 * N, 0);
  for (auto& f : futs) {
    auto part = f.get();
    for (std::size_t k = 0; k < 2 * N; ++k) unresolved[k] += part[k];
  }

  EvePathProfile e{path, {}};
  e.prof.kind = ReliabilityProfile::Kind::MonteCarlo;
  e.prof.trials = trials;
  e.prof.z.resize(2 * N);
  e.prof.stderr_z.resize(2 * N);
  for (std::size_t k = 0; k < 2 * N; ++k) {
    const double p = static_cast<double>(unresolved[k]) / static_cast<double>(trials);
    e.prof.z[k] = p;
    e.prof.stderr_z[k] = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  }
  return e;
}

// Exact profile by full enumeration of input pairs and erasure patterns.
// Validation oracle for mc_mac_profile; N <= 4 only.
inline EvePathProfile exact_mac_profile_oracle(const MonotonePath& path,
                                               double epse) {
  const std::size_t N = path.block_length();
  if (N > 4) throw TooLargeError("exact_mac_profile_oracle: N must be <= 4");
  if (!(epse >= 0.0 && epse <= 1.0))
    throw InvalidInputError("exact_mac_profile_oracle: epse must be in [0,1]");
  const int n = log2_exact(N);
  const std::size_t nu = std::size_t{1} << N;      // per-user u space
  const std::size_t ns = std::size_t{1} << (2 * N);  // path-bit space
  std::size_t ny = 1;
  for (std::size_t t = 0; t < N; ++t) ny *= 4;  // base-4 output sequences

  // occurrence index of each path element within its user
  std::vector<std::uint32_t> occ(2 * N);
  {
    std::uint32_t c1 = 0, c2 = 0;
    for (std::size_t k = 0; k < 2 * N; ++k)
      occ[k] = (path.user_at(k) == 1) ? c1++ : c2++;
  }

  // joint[y][s] = P(y-sequence, path-ordered bits s); s_1 is the top bit.
  std::vector<std::vector<double>> joint(ny, std::vector<double>(ns, 0.0));
  const double pu = 1.0 / static_cast<double>(nu * nu);
  for (std::size_t a = 0; a < nu; ++a) {
    BinaryBlock u1(N), u2(N);
    for (std::size_t i = 0; i < N; ++i) u1.set(i, (a >> i) & 1);
    for (std::size_t b = 0; b < nu; ++b) {
      for (std::size_t i = 0; i < N; ++i) u2.set(i, (b >> i) & 1);
      BinaryBlock x1 = polar_transform(u1);
      BinaryBlock x2 = polar_transform(u2);
      std::size_t s = 0;
      for (std::size_t k = 0; k < 2 * N; ++k) {
        const int bit = path.user_at(k) == 1 ? ((a >> occ[k]) & 1) : ((b >> occ[k]) & 1);
        s |= static_cast<std::size_t>(bit) << (2 * N - 1 - k);
      }
      for (std::size_t mask = 0; mask < (std::size_t{1} << N); ++mask) {
        double p = pu;
        std::size_t yidx = 0, pw = 1;
        for (std::size_t t = 0; t < N; ++t) {
          if ((mask >> t) & 1) {
            p *= epse;
            yidx += 3 * pw;
          } else {
            p *= (1.0 - epse);
            yidx += static_cast<std::size_t>(x1.get(t) + x2.get(t)) * pw;
          }
          pw *= 4;
        }
        if (p > 0.0) joint[yidx][s] += p;
      }
    }
  }

  EvePathProfile e{path, {}};
  e.prof.kind = ReliabilityProfile::Kind::Exact;
  e.prof.z.resize(2 * N);
  for (std::size_t k = 0; k < 2 * N; ++k) {
    // Z = 2 sum_{y, prefix} sqrt(P(y,prefix,0) P(y,prefix,1))
    const std::size_t npref = std::size_t{1} << k;
    const std::size_t suffix = std::size_t{1} << (2 * N - 1 - k);
    double zsum = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t pref = 0; pref < npref; ++pref) {
        double p0 = 0.0, p1 = 0.0;
        for (std::size_t rest = 0; rest < suffix; ++rest) {
          const std::size_t hi = pref << (2 * N - k);
          p0 += joint[y][hi | rest];
          p1 += joint[y][hi | suffix | rest];
        }
        zsum += 2.0 * std::sqrt(p0 * p1);
      }
    }
    e.prof.z[k] = zsum;
  }
  e.prof.trials = 0;
  (void)n;
  return e;
}

}  // namespace polarjam
