#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "polarjam/gf2.hpp"
#include "polarjam/rng.hpp"

using namespace polarjam;

TEST_CASE("bit reversal permutation pinned values") {
  CHECK(bit_reversal_permutation(0) == std::vector<std::uint32_t>{0});
  CHECK(bit_reversal_permutation(1) == std::vector<std::uint32_t>{0, 1});
  CHECK(bit_reversal_permutation(3) ==
        std::vector<std::uint32_t>{0, 4, 2, 6, 1, 5, 3, 7});
}

TEST_CASE("bit reversal is an involution") {
  for (int n : {2, 4, 7, 10}) {
    auto perm = bit_reversal_permutation(n);
    for (std::size_t i = 0; i < perm.size(); ++i)
      REQUIRE(perm[perm[i]] == i);
  }
}

TEST_CASE("polar transform pinned small cases") {
  CHECK(polar_transform(BinaryBlock{0, 0}) == BinaryBlock{0, 0});
  CHECK(polar_transform(BinaryBlock{1, 1}) == BinaryBlock{0, 1});
  CHECK(polar_transform(BinaryBlock{1, 0}) == BinaryBlock{1, 0});
  CHECK(polar_transform(BinaryBlock{0, 1}) == BinaryBlock{1, 1});
}

TEST_CASE("polar transform matches the dense generator matrix") {
  Rng rng = Rng::from_seed(11);
  for (int n = 0; n <= 6; ++n) {
    for (int rep = 0; rep < 8; ++rep) {
      auto u = BinaryBlock::random(std::size_t{1} << n, rng);
      REQUIRE(polar_transform(u) == oracles::dense_transform(u));
    }
  }
}

TEST_CASE("polar transform is an involution") {
  Rng rng = Rng::from_seed(7);
  for (int n = 0; n <= 14; ++n) {
    auto u = BinaryBlock::random(std::size_t{1} << n, rng);
    REQUIRE(polar_transform(polar_transform(u)) == u);
  }
}

TEST_CASE("polar transform is linear") {
  Rng rng = Rng::from_seed(3);
  for (int n : {1, 3, 6, 10}) {
    const std::size_t N = std::size_t{1} << n;
    auto a = BinaryBlock::random(N, rng);
    auto b = BinaryBlock::random(N, rng);
    REQUIRE(polar_transform(a ^ b) == (polar_transform(a) ^ polar_transform(b)));
  }
}

TEST_CASE("polar transform rejects non power-of-two lengths") {
  CHECK_THROWS_AS(polar_transform(BinaryBlock{1, 0, 1}), InvalidInputError);
  CHECK_THROWS_AS(polar_transform(BinaryBlock(0)), InvalidInputError);
}

TEST_CASE("binary block hex round trip") {
  Rng rng = Rng::from_seed(5);
  for (std::size_t n : {1u, 7u, 64u, 130u}) {
    auto b = BinaryBlock::random(n, rng);
    REQUIRE(BinaryBlock::from_hex(b.to_hex(), n) == b);
  }
}
