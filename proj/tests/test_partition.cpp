#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "polarjam/partition.hpp"

using namespace polarjam;

namespace {

ConstructionParams params_for(int n, double beta, ChannelParams ch = {0.2, 0.3, 0.4},
                              std::int64_t corner = -1) {
  const std::size_t N = std::size_t{1} << n;
  const std::size_t i = corner < 0 ? N : static_cast<std::size_t>(corner);
  return {n, beta, ch, make_path(i, n)};
}

struct Built {
  StrongPartition part;
  RateReport rates;
};

Built build_example(int n, double beta, ChannelParams ch = {0.2, 0.3, 0.4},
                    int m = 1) {
  auto params = params_for(n, beta, ch);
  auto [l1, l2] = legit_profiles(params);
  auto eve = eve_path_profile_corner(n, ch.epse, params.block_length());
  auto [p, r] = build_strong_partition(params, l1, l2, eve, m);
  return {std::move(p), r};
}

void check_cover(const UserSets& s, std::size_t N) {
  std::set<std::uint32_t> all;
  std::size_t total = 0;
  for (auto* v : {&s.I, &s.F, &s.Ra, &s.Rb, &s.D}) {
    total += v->size();
    all.insert(v->begin(), v->end());
  }
  REQUIRE(total == N);
  REQUIRE(all.size() == N);  // disjoint and covering
}

}  // namespace

TEST_CASE("strong partition pinned N=4 sets against hand evaluation") {
  // n=2, beta=0.3: delta = 2^-(4^0.3) ~ 0.3497
  // legit1 = BEC(0.2) profile (0.5904, 0.1296, 0.0784, 0.0016)
  // eve1   = BEC(0.7) profile (0.9919, 0.8281, 0.7399, 0.2401)
  auto b = build_example(2, 0.3);
  CHECK(b.part.user1.I == std::vector<std::uint32_t>{1, 2});
  CHECK(b.part.user1.F == std::vector<std::uint32_t>{0});
  CHECK(b.part.user1.Ra == std::vector<std::uint32_t>{3});
  CHECK(b.part.user1.Rb.empty());
  CHECK(b.part.user1.D.empty());
  // legit2 = BEC(0.3) profile (0.7599, 0.2601, 0.1719, 0.0081)
  // eve2   = BEC(0.4) profile (0.8704, 0.4096, 0.2944, 0.0256)
  CHECK(b.part.user2.I.empty());
  CHECK(b.part.user2.F == std::vector<std::uint32_t>{0});
  CHECK(b.part.user2.Ra == std::vector<std::uint32_t>{1, 2, 3});
  CHECK(b.part.user2.Rb.empty());
}

TEST_CASE("strong partition covers and is disjoint") {
  for (int n : {4, 8, 10}) {
    for (double beta : {0.16, 0.3}) {
      auto b = build_example(n, beta);
      check_cover(b.part.user1, std::size_t{1} << n);
      check_cover(b.part.user2, std::size_t{1} << n);
    }
  }
}

TEST_CASE("chain split: |Ib| = |Rb| and Ib rides the most reliable indices") {
  auto b = build_example(10, 0.16, {0.2, 0.3, 0.4}, 1);
  auto [l1, l2] = legit_profiles(params_for(10, 0.16));
  for (int j : {1, 2}) {
    const auto& s = b.part.sets(j);
    const auto& legit = j == 1 ? l1 : l2;
    if (s.I.size() >= s.Rb.size()) {
      REQUIRE(s.Ib.size() == s.Rb.size());
      REQUIRE(s.Ia.size() + s.Ib.size() == s.I.size());
      // every Ib index is at least as reliable as every Ia index
      double worst_ib = 0.0, best_ia = 1.0;
      for (auto i : s.Ib) worst_ib = std::max(worst_ib, legit.z[i]);
      for (auto i : s.Ia) best_ia = std::min(best_ia, legit.z[i]);
      if (!s.Ib.empty() && !s.Ia.empty()) REQUIRE(worst_ib <= best_ia);
    } else {
      REQUIRE(s.Ib.empty());
    }
  }
}

TEST_CASE("negative secrecy rate errors when chaining is required") {
  // (0.3 vs 0.4) at moderate size: user 2 has |I| < |Rb|
  auto params = params_for(10, 0.3);
  auto [l1, l2] = legit_profiles(params);
  auto eve = eve_path_profile_corner(10, 0.4, 1024);
  CHECK_THROWS_AS(build_strong_partition(params, l1, l2, eve, 2),
                  NegativeSecrecyRateError);
  // a single block never chains, so the same construction builds
  auto [p, r] = build_strong_partition(params, l1, l2, eve, 1);
  CHECK(r.r2 < 0.0);
  CHECK(p.user2.Ib.empty());
}

TEST_CASE("noiseless eavesdropper leaves no secret indices") {
  auto params = params_for(8, 0.3, {0.2, 0.3, 0.0});
  auto [l1, l2] = legit_profiles(params);
  auto eve = eve_path_profile_corner(8, 0.0, 256);
  // user 2 sees Eve's exact BEC(0): every index reliable for Eve, so the
  // secret set is empty and the chained build cannot close
  try {
    auto [p, r] = build_strong_partition(params, l1, l2, eve, 2);
    CHECK(p.user2.I.empty());
  } catch (const NegativeSecrecyRateError& e) {
    CHECK((e.user == 1 || e.user == 2));
    CHECK(e.info_size < e.chain_size);
  }
  auto [p1, r1] = build_strong_partition(params, l1, l2, eve, 1);
  CHECK(p1.user2.I.empty());
}

TEST_CASE("rate report matches the set-size formulas") {
  const int m = 3;
  auto b = build_example(12, 0.16, {0.2, 0.3, 0.4}, 1);
  auto params = params_for(12, 0.16);
  auto rep = strong_rate_report(params, b.part.user1, b.part.user2, m);
  const double N = 4096.0;
  CHECK(rep.r1 == (b.part.user1.I.size() - static_cast<double>(b.part.user1.Rb.size())) / N);
  CHECK(rep.r2 == (b.part.user2.I.size() - static_cast<double>(b.part.user2.Rb.size())) / N);
  CHECK(rep.r_seed ==
        (b.part.user1.Rb.size() + b.part.user2.Rb.size()) / (2.0 * m * N));
  CHECK(rep.r_f == (b.part.user1.F.size() + b.part.user2.F.size()) / (2.0 * m * N));
  CHECK(rep.r_d == 0.0);
}

TEST_CASE("region caps for the running example") {
  RateReport r;
  fill_region_caps({0.2, 0.3, 0.4}, r);
  CHECK(r.cap_r1 == Catch::Approx(0.5).margin(1e-12));
  CHECK(r.cap_r2 == Catch::Approx(0.4).margin(1e-12));
  CHECK(r.cap_sum == Catch::Approx(0.6).margin(1e-12));
}

TEST_CASE("rates stay inside the analytic region and approach (0.5, 0.1)") {
  double prev_gap1 = 1.0, prev_gap_sum = 1.0;
  for (int n : {10, 12, 14, 16}) {
    auto b = build_example(n, 0.16);
    CHECK(b.rates.r1 <= b.rates.cap_r1 + 1e-12);
    CHECK(b.rates.r2 <= b.rates.cap_r2 + 1e-12);
    CHECK(b.rates.sum_rate() <= b.rates.cap_sum + 1e-12);
    const double gap1 = 0.5 - b.rates.r1;
    const double gap_sum = 0.6 - b.rates.sum_rate();
    CHECK(gap1 >= 0.0);
    CHECK(gap1 < prev_gap1);
    CHECK(gap_sum < prev_gap_sum);
    prev_gap1 = gap1;
    prev_gap_sum = gap_sum;
  }
}

TEST_CASE("elementwise dominance for corner paths with a worse Eve") {
  for (int n : {4, 8, 12}) {
    auto l1 = bec_z_profile(n, 0.2);
    auto eve = eve_path_profile_corner(n, 0.4, std::size_t{1} << n);
    auto ez = eve.user_z(1);  // BEC(0.7) profile
    for (std::size_t i = 0; i < l1.size(); ++i) REQUIRE(ez[i] >= l1.z[i]);
    auto l2 = bec_z_profile(n, 0.3);
    auto ez2 = eve.user_z(2);  // BEC(0.4) profile
    for (std::size_t i = 0; i < l2.size(); ++i) REQUIRE(ez2[i] >= l2.z[i]);
  }
}

TEST_CASE("degraded inclusion holds for (0.2, 0.4) and fails when swapped") {
  for (int n : {4, 8, 12, 16}) {
    auto params = params_for(n, 0.3);
    auto [l1, l2] = legit_profiles(params);
    auto eve = eve_path_profile_corner(n, 0.4, params.block_length());
    auto chk = check_degraded_inclusion(l1, l2, eve,
                                        delta_threshold(n, 0.3));
    REQUIRE(chk.ok);
  }
  // swapped: legit BEC(0.4), eve BEC(0.2) for the second-decoded user
  auto params = params_for(12, 0.3, {0.4, 0.4, 0.2});
  auto [l1, l2] = legit_profiles(params);
  auto eve = eve_path_profile_corner(12, 0.2, 4096);
  auto chk = check_degraded_inclusion(l1, l2, eve, delta_threshold(12, 0.3));
  REQUIRE_FALSE(chk.ok);
  REQUIRE(!chk.violations.empty());
  for (auto& [user, idx] : chk.violations) CHECK(user == 2);
}

TEST_CASE("identical legitimate and eve channels: sets equal, inclusion holds") {
  // corner with user 1 first: user 2's Eve channel is exactly BEC(epse)
  auto params = params_for(10, 0.3, {0.2, 0.3, 0.3});
  auto [l1, l2] = legit_profiles(params);
  auto eve = eve_path_profile_corner(10, 0.3, 1024);
  auto chk = check_degraded_inclusion(l1, l2, eve, delta_threshold(10, 0.3));
  REQUIRE(chk.ok);
  REQUIRE(eve.user_z(2) == l2.z);
}

TEST_CASE("weak partition sets and rates") {
  auto params = params_for(12, 0.3);
  auto [l1, l2] = legit_profiles(params);
  auto eve = eve_path_profile_corner(12, 0.4, 4096);
  auto [p, r] = build_weak_partition(params, l1, l2, eve);
  for (int j : {1, 2}) {
    const auto& s = p.sets(j);
    std::set<std::uint32_t> all;
    all.insert(s.I.begin(), s.I.end());
    all.insert(s.F.begin(), s.F.end());
    all.insert(s.R.begin(), s.R.end());
    all.insert(s.D.begin(), s.D.end());
    REQUIRE(all.size() == 4096);
    REQUIRE(s.I.size() + s.F.size() + s.R.size() + s.D.size() == 4096);
  }
  CHECK(r.r1 == p.user1.I.size() / 4096.0);
  CHECK(r.r2 == p.user2.I.size() / 4096.0);
  CHECK(r.r_seed == 0.0);
}

TEST_CASE("weak partition approaches (0.5, 0.1)") {
  std::vector<double> r1s, r2s;
  for (int n : {12, 16}) {
    auto params = params_for(n, 0.3);
    auto [l1, l2] = legit_profiles(params);
    auto eve = eve_path_profile_corner(n, 0.4, params.block_length());
    auto [p, r] = build_weak_partition(params, l1, l2, eve);
    r1s.push_back(r.r1);
    r2s.push_back(r.r2);
  }
  CHECK(r1s.back() == Catch::Approx(0.5).margin(0.06));
  CHECK(r2s.back() == Catch::Approx(0.1).margin(0.06));
}

TEST_CASE("weak partition refuses a non-degraded eavesdropper") {
  auto params = params_for(10, 0.3, {0.4, 0.4, 0.2});
  auto [l1, l2] = legit_profiles(params);
  auto eve = eve_path_profile_corner(10, 0.2, 1024);
  CHECK_THROWS_AS(build_weak_partition(params, l1, l2, eve), NotDegradedError);
}

TEST_CASE("identical channels shrink the weak information set to nothing") {
  // corner with user 1 first (i = N): user 1's Eve channel is the strong
  // BEC((1+e)/2); with user 2 first (i = 0) user 1 sees exactly BEC(eps1)
  // and keeps no advantage, I1 is empty at any size.
  auto params = params_for(9, 0.3, {0.3, 0.3, 0.3}, 0);
  auto [l1, l2] = legit_profiles(params);
  auto eve = eve_path_profile_corner(9, 0.3, 0);
  auto [p, r] = build_weak_partition(params, l1, l2, eve);
  CHECK(p.user1.I.empty());
  CHECK(r.r1 == 0.0);
}

TEST_CASE("construction params validation") {
  auto params = params_for(8, 0.3);
  params.beta = 0.5;
  CHECK_THROWS_AS(params.validate(), InvalidInputError);
  params.beta = 0.3;
  params.channel.epse = -0.1;
  CHECK_THROWS_AS(params.validate(), InvalidInputError);
}
