#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "polarjam/channel.hpp"
#include "polarjam/errors.hpp"
#include "polarjam/eve_profile.hpp"
#include "polarjam/path.hpp"
#include "polarjam/profile.hpp"

namespace polarjam {

struct ConstructionParams {
  int n;
  double beta;
  ChannelParams channel;
  MonotonePath path;

  std::size_t block_length() const { return std::size_t{1} << n; }

  void validate() const {
    if (n < 0) throw InvalidInputError("ConstructionParams: n must be >= 0");
    channel.validate();
    if (!(beta > 0.0 && beta < 0.5))
      throw InvalidInputError("ConstructionParams: beta must be in (0, 1/2)");
    if (path.block_length() != block_length())
      throw InvalidInputError("ConstructionParams: path length != 2N");
  }
};

// Position roles inside one user's u block.
enum class Role : std::uint8_t {
  Message,        // I^a: secret information bits
  ChainSource,    // I^b: random bits, decodable, fed to the next block
  RandomFill,     // R^a: random bits known to Eve's good indices
  Frozen,         // F: public frozen bits
  ChainSink,      // R^b: seed in block 1, previous block's I^b afterwards
  Deterministic,  // D: almost deterministic bits (empty under uniform inputs)
};

struct UserSets {
  std::vector<std::uint32_t> I, F, Ra, Rb, D;
  std::vector<std::uint32_t> Ia, Ib;  // split of I for chaining
};

struct WeakUserSets {
  std::vector<std::uint32_t> I, F, R, D;
};

// Per-user view the codec works from: a role per index plus the decodable
// set L of the legitimate channel.
struct UserCodeView {
  std::size_t N = 0;
  std::vector<Role> role;
  std::vector<std::uint8_t> in_L;
  // ascending position lists per role, kept for length checks and extraction
  std::vector<std::uint32_t> message_pos, chain_src_pos, fill_pos, frozen_pos,
      chain_sink_pos, det_copy_pos;

  std::size_t det_payload_size() const { return det_copy_pos.size(); }
};

struct StrongPartition {
  int n = 0;
  double delta = 0.0;
  MonotonePath path;
  UserSets user1, user2;
  UserCodeView view1, view2;

  const UserCodeView& view(int j) const { return j == 1 ? view1 : view2; }
  const UserSets& sets(int j) const { return j == 1 ? user1 : user2; }
};

struct WeakPartition {
  int n = 0;
  double delta = 0.0;
  MonotonePath path;
  WeakUserSets user1, user2;
  UserCodeView view1, view2;

  const UserCodeView& view(int j) const { return j == 1 ? view1 : view2; }
  const WeakUserSets& sets(int j) const { return j == 1 ? user1 : user2; }
};

struct RateReport {
  double r1 = 0.0, r2 = 0.0;               // secrecy rates
  double r_seed = 0.0, r_f = 0.0, r_d = 0.0;  // shared-randomness rates
  double cap_r1 = 0.0, cap_r2 = 0.0, cap_sum = 0.0;  // analytic region
  double sum_rate() const { return r1 + r2; }
};

// Analytic caps of the erasure two-way wiretap region (uniform inputs):
// R_j <= (1-eps_j) - (C_sum - R_single), with R_single = 1-eps_e and
// C_sum = 1.5 (1-eps_e).
inline void fill_region_caps(const ChannelParams& ch, RateReport& r) {
  const double single = 1.0 - ch.epse;
  const double csum = 1.5 * (1.0 - ch.epse);
  r.cap_r1 = (1.0 - ch.eps1) - (csum - single);
  r.cap_r2 = (1.0 - ch.eps2) - (csum - single);
  r.cap_sum = (1.0 - ch.eps1) + (1.0 - ch.eps2) - csum;
}

namespace detail {

inline std::vector<std::uint8_t> le_membership(const std::vector<double>& z,
                                               double delta) {
  std::vector<std::uint8_t> m(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) m[i] = z[i] <= delta ? 1 : 0;
  return m;
}

inline UserSets strong_user_sets(const ReliabilityProfile& legit,
                                 const std::vector<double>& eve_z,
                                 double delta) {
  if (legit.size() != eve_z.size())
    throw InvalidInputError("partition: profile lengths differ");
  UserSets s;
  for (std::uint32_t i = 0; i < legit.size(); ++i) {
    const bool inL = legit.z[i] <= delta;
    const bool inHe = eve_z[i] >= 1.0 - delta;
    // H_C = [N] under uniform inputs, so D stays empty.
    if (inL && inHe) s.I.push_back(i);
    else if (!inL && inHe) s.F.push_back(i);
    else if (inL && !inHe) s.Ra.push_back(i);
    else s.Rb.push_back(i);
  }
  return s;
}

// Choose I^b as the |R^b| information indices with the most reliable
// legitimate channel, so chained bits ride the safest positions. When the
// positive-rate precondition |I| >= |R^b| fails, chaining cannot close:
// with m >= 2 blocks that is an error; a single block never consumes I^b,
// so m = 1 proceeds with an empty chain source.
inline void split_chain_subset(UserSets& s, const ReliabilityProfile& legit,
                               int user, int m) {
  if (s.I.size() < s.Rb.size()) {
    if (m > 1)
      throw NegativeSecrecyRateError(
          user, s.I.size(), s.Rb.size(),
          "negative secrecy rate for user " + std::to_string(user) + ": |I|=" +
              std::to_string(s.I.size()) + " < |R^b|=" +
              std::to_string(s.Rb.size()) + ", cannot chain m >= 2 blocks");
    s.Ib.clear();
    s.Ia = s.I;
    return;
  }
  std::vector<std::uint32_t> byz = s.I;
  std::stable_sort(byz.begin(), byz.end(), [&](std::uint32_t a, std::uint32_t b) {
    return legit.z[a] < legit.z[b];
  });
  s.Ib.assign(byz.begin(), byz.begin() + static_cast<std::ptrdiff_t>(s.Rb.size()));
  std::sort(s.Ib.begin(), s.Ib.end());
  s.Ia.clear();
  std::set_difference(s.I.begin(), s.I.end(), s.Ib.begin(), s.Ib.end(),
                      std::back_inserter(s.Ia));
}

inline UserCodeView make_view_strong(const UserSets& s,
                                     const ReliabilityProfile& legit,
                                     double delta) {
  UserCodeView v;
  v.N = legit.size();
  v.role.assign(v.N, Role::Frozen);
  v.in_L = le_membership(legit.z, delta);
  for (auto i : s.Ia) v.role[i] = Role::Message;
  for (auto i : s.Ib) v.role[i] = Role::ChainSource;
  for (auto i : s.Ra) v.role[i] = Role::RandomFill;
  for (auto i : s.F) v.role[i] = Role::Frozen;
  for (auto i : s.Rb) v.role[i] = Role::ChainSink;
  for (auto i : s.D) v.role[i] = Role::Deterministic;
  v.message_pos = s.Ia;
  v.chain_src_pos = s.Ib;
  v.frozen_pos = s.F;
  v.chain_sink_pos = s.Rb;
  for (auto i : s.D)
    if (!v.in_L[i]) v.det_copy_pos.push_back(i);
  // R^a and I^b are both uniform random fill at encode time
  std::merge(s.Ra.begin(), s.Ra.end(), s.Ib.begin(), s.Ib.end(),
             std::back_inserter(v.fill_pos));
  return v;
}

inline UserCodeView make_view_weak(const WeakUserSets& s,
                                   const ReliabilityProfile& legit,
                                   double delta) {
  UserCodeView v;
  v.N = legit.size();
  v.role.assign(v.N, Role::Frozen);
  v.in_L = le_membership(legit.z, delta);
  for (auto i : s.I) v.role[i] = Role::Message;
  for (auto i : s.R) v.role[i] = Role::RandomFill;
  for (auto i : s.F) v.role[i] = Role::Frozen;
  for (auto i : s.D) v.role[i] = Role::Deterministic;
  v.message_pos = s.I;
  v.fill_pos = s.R;
  v.frozen_pos = s.F;
  for (auto i : s.D)
    if (!v.in_L[i]) v.det_copy_pos.push_back(i);
  return v;
}

}  // namespace detail

// Legitimate-channel profiles for the construction parameters.
inline std::pair<ReliabilityProfile, ReliabilityProfile> legit_profiles(
    const ConstructionParams& p) {
  return {bec_z_profile(p.n, p.channel.eps1), bec_z_profile(p.n, p.channel.eps2)};
}

// Eavesdropper path profile: exact for corner paths, Monte-Carlo otherwise.
inline EvePathProfile eve_profile_for(const ConstructionParams& p,
                                      std::uint64_t mc_trials, const Rng& rng) {
  auto corner = p.path.corner_param();
  if (corner && (*corner == 0 || *corner == p.block_length()))
    return eve_path_profile_corner(p.n, p.channel.epse, *corner);
  return mc_mac_profile(p.path, p.channel.epse, mc_trials, rng);
}

// Rate report from set sizes alone; defined even when chaining is
// infeasible (then r_j < 0 and build_strong_partition refuses).
inline RateReport strong_rate_report(const ConstructionParams& params,
                                     const UserSets& s1, const UserSets& s2,
                                     int m) {
  const double N = static_cast<double>(params.block_length());
  RateReport r;
  r.r1 = (static_cast<double>(s1.I.size()) - static_cast<double>(s1.Rb.size())) / N;
  r.r2 = (static_cast<double>(s2.I.size()) - static_cast<double>(s2.Rb.size())) / N;
  r.r_seed = static_cast<double>(s1.Rb.size() + s2.Rb.size()) / (2.0 * m * N);
  r.r_f = static_cast<double>(s1.F.size() + s2.F.size()) / (2.0 * m * N);
  r.r_d = 0.0;  // D is empty under uniform inputs; counted per block, not per m
  fill_region_caps(params.channel, r);
  return r;
}

inline std::pair<StrongPartition, RateReport> build_strong_partition(
    const ConstructionParams& params, const ReliabilityProfile& legit1,
    const ReliabilityProfile& legit2, const EvePathProfile& eve, int m) {
  params.validate();
  if (m < 1) throw InvalidInputError("build_strong_partition: m must be >= 1");
  const std::size_t N = params.block_length();
  if (legit1.size() != N || legit2.size() != N || eve.prof.size() != 2 * N)
    throw InvalidInputError("build_strong_partition: profile length mismatch");
  const double delta = delta_threshold(params.n, params.beta);

  StrongPartition p;
  p.n = params.n;
  p.delta = delta;
  p.path = eve.path;
  p.user1 = detail::strong_user_sets(legit1, eve.user_z(1), delta);
  p.user2 = detail::strong_user_sets(legit2, eve.user_z(2), delta);
  RateReport report = strong_rate_report(params, p.user1, p.user2, m);
  detail::split_chain_subset(p.user1, legit1, 1, m);
  detail::split_chain_subset(p.user2, legit2, 2, m);
  p.view1 = detail::make_view_strong(p.user1, legit1, delta);
  p.view2 = detail::make_view_strong(p.user2, legit2, delta);
  return {std::move(p), report};
}

struct DegradationCheck {
  bool ok = true;
  std::vector<std::pair<int, std::uint32_t>> violations;  // (user, index)
};

// Lemma-2 style inclusion: L_{S_Uj | Ye} inside L_{Cj | Yj Xother}.
inline DegradationCheck check_degraded_inclusion(const ReliabilityProfile& legit1,
                                                 const ReliabilityProfile& legit2,
                                                 const EvePathProfile& eve,
                                                 double delta) {
  DegradationCheck c;
  for (int j : {1, 2}) {
    const auto& legit = (j == 1) ? legit1 : legit2;
    const auto eve_z = eve.user_z(j);
    if (legit.size() != eve_z.size())
      throw InvalidInputError("check_degraded_inclusion: profile length mismatch");
    for (std::uint32_t i = 0; i < legit.size(); ++i) {
      if (eve_z[i] <= delta && !(legit.z[i] <= delta)) {
        c.ok = false;
        c.violations.emplace_back(j, i);
      }
    }
  }
  return c;
}

inline std::pair<WeakPartition, RateReport> build_weak_partition(
    const ConstructionParams& params, const ReliabilityProfile& legit1,
    const ReliabilityProfile& legit2, const EvePathProfile& eve) {
  params.validate();
  const std::size_t N = params.block_length();
  if (legit1.size() != N || legit2.size() != N || eve.prof.size() != 2 * N)
    throw InvalidInputError("build_weak_partition: profile length mismatch");
  const double delta = delta_threshold(params.n, params.beta);

  auto chk = check_degraded_inclusion(legit1, legit2, eve, delta);
  if (!chk.ok)
    throw NotDegradedError(chk.violations,
                           "eavesdropper channel is not degraded: " +
                               std::to_string(chk.violations.size()) +
                               " low-set indices escape the legitimate low set");

  WeakPartition p;
  p.n = params.n;
  p.delta = delta;
  p.path = eve.path;
  for (int j : {1, 2}) {
    const auto& legit = (j == 1) ? legit1 : legit2;
    const auto eve_z = eve.user_z(j);
    WeakUserSets s;
    for (std::uint32_t i = 0; i < N; ++i) {
      const bool inL = legit.z[i] <= delta;
      const bool inLe = eve_z[i] <= delta;
      if (inL && !inLe) s.I.push_back(i);
      else if (!inL && !inLe) s.F.push_back(i);
      else if (inL && inLe) s.R.push_back(i);
      else
        throw NotDegradedError({{j, i}}, "degradation violated after check");
    }
    ((j == 1) ? p.user1 : p.user2) = std::move(s);
  }
  p.view1 = detail::make_view_weak(p.user1, legit1, delta);
  p.view2 = detail::make_view_weak(p.user2, legit2, delta);

  RateReport r;
  const double Nd = static_cast<double>(N);
  r.r1 = static_cast<double>(p.user1.I.size()) / Nd;
  r.r2 = static_cast<double>(p.user2.I.size()) / Nd;
  r.r_seed = 0.0;
  r.r_f = static_cast<double>(p.user1.F.size() + p.user2.F.size()) / (2.0 * Nd);
  r.r_d = 0.0;
  fill_region_caps(params.channel, r);
  return {std::move(p), r};
}

}  // namespace polarjam
