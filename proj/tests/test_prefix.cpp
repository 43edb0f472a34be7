#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "polarjam/prefix.hpp"

using namespace polarjam;

namespace {

// Brute-force P(V^i = 0 | c, v_prefix) for V = X G_N, X_t ~ P(.|c_t).
double bayes_prefix_posterior(const PrefixTable& table, const BinaryBlock& c,
                              const std::vector<std::uint8_t>& prefix) {
  const std::size_t N = c.size();
  double w0 = 0.0, w1 = 0.0;
  for (std::size_t xs = 0; xs < (std::size_t{1} << N); ++xs) {
    BinaryBlock x(N);
    double p = 1.0;
    for (std::size_t t = 0; t < N; ++t) {
      const int xb = (xs >> t) & 1;
      x.set(t, xb);
      p *= table.p[c.get(t)][xb];
    }
    if (p == 0.0) continue;
    auto v = oracles::dense_transform(x);
    bool ok = true;
    for (std::size_t i = 0; i < prefix.size() && ok; ++i)
      ok = v.get(i) == prefix[i];
    if (!ok) continue;
    (v.get(prefix.size()) == 0 ? w0 : w1) += p;
  }
  return w0 / (w0 + w1);
}

}  // namespace

TEST_CASE("prefix table validation") {
  PrefixTable bad;
  bad.p = {{{0.6, 0.6}, {0.0, 1.0}}};
  CHECK_THROWS_AS(bad.validate(), InvalidInputError);
}

TEST_CASE("soft SC posterior matches brute force for a BSC-style table") {
  PrefixTable t;
  t.p = {{{0.9, 0.1}, {0.2, 0.8}}};
  Rng rng = Rng::from_seed(17);
  for (int n : {0, 1, 2}) {
    const std::size_t N = std::size_t{1} << n;
    for (int rep = 0; rep < 30; ++rep) {
      auto c = BinaryBlock::random(N, rng);
      SoftScEngine eng(prefix_leaf_priors(t, c));
      std::vector<std::uint8_t> prefix;
      for (std::size_t i = 0; i < N; ++i) {
        const double ref = bayes_prefix_posterior(t, c, prefix);
        REQUIRE(eng.next_posterior_p0() == Catch::Approx(ref).margin(1e-12));
        const int bit = rng.next_bit();
        eng.push_next(bit);
        prefix.push_back(static_cast<std::uint8_t>(bit));
      }
    }
  }
}

TEST_CASE("identity prefixing reproduces the auxiliary codeword") {
  PrefixModel identity;  // defaults: identity table, empty high set
  REQUIRE(identity.is_identity());
  Rng rng = Rng::from_seed(19);
  auto c = BinaryBlock::random(64, rng);
  auto [v, x] = sample_prefixed_codeword(c, identity, rng);
  REQUIRE(x == c);
  REQUIRE(v == polar_transform(c));
}

TEST_CASE("independent uniform table gives a uniform codeword") {
  PrefixTable t;
  t.p = {{{0.5, 0.5}, {0.5, 0.5}}};
  Rng rng = Rng::from_seed(23);
  auto model = estimate_prefix_model(t, 4, 0.1, 400, rng);
  // X independent of C and uniform: every position polarizes high
  REQUIRE(model.high_set.size() == 16);
  auto c = BinaryBlock::random(16, rng);
  std::size_t diff = 0;
  for (int rep = 0; rep < 64; ++rep) {
    auto [v, x] = sample_prefixed_codeword(c, model, rng);
    diff += (x ^ c).popcount();
  }
  // x should not track c: expect ~half the bits to differ
  const double frac = static_cast<double>(diff) / (64.0 * 16.0);
  REQUIRE(frac == Catch::Approx(0.5).margin(0.1));
}

TEST_CASE("identity table estimates an empty high set") {
  PrefixTable t;  // identity by default
  Rng rng = Rng::from_seed(29);
  auto model = estimate_prefix_model(t, 3, 0.2, 200, rng);
  REQUIRE(model.high_set.empty());
}

TEST_CASE("noisy prefix sampling follows the table statistics") {
  PrefixTable t;
  t.p = {{{0.85, 0.15}, {0.15, 0.85}}};
  Rng rng = Rng::from_seed(31);
  auto model = estimate_prefix_model(t, 6, 0.15, 500, rng);
  auto c = BinaryBlock::random(64, rng);
  std::size_t agree = 0;
  const int reps = 400;
  for (int rep = 0; rep < reps; ++rep) {
    auto [v, x] = sample_prefixed_codeword(c, model, rng);
    for (std::size_t tpos = 0; tpos < 64; ++tpos)
      agree += x.get(tpos) == c.get(tpos);
  }
  const double frac = static_cast<double>(agree) / (reps * 64.0);
  REQUIRE(frac == Catch::Approx(0.85).margin(0.03));
}
