#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace polarjam {

// Counter-based pseudo-random stream (SplitMix64 finalizer over key+counter).
// Every component derives its own stream from (master seed, tag, indices),
// so simulations replay bit-exactly regardless of evaluation order or
// threading. Not cryptographic; statistical quality is what simulation needs.
class Rng {
 public:
  Rng() : key_(mix(0)) {}
  explicit Rng(std::uint64_t key) : key_(key) {}

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  static constexpr std::uint64_t tag(std::string_view name) {
    std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
    for (char c : name) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001B3ULL;
    }
    return h;
  }

  // Derive a child stream; order of path elements matters.
  Rng stream(std::initializer_list<std::uint64_t> path) const {
    std::uint64_t k = key_;
    for (std::uint64_t p : path) k = mix(k ^ mix(p));
    return Rng(k);
  }
  Rng stream(std::string_view name) const { return stream({tag(name)}); }
  Rng stream(std::string_view name, std::uint64_t a) const {
    return stream({tag(name), a});
  }
  Rng stream(std::string_view name, std::uint64_t a, std::uint64_t b) const {
    return stream({tag(name), a, b});
  }

  static Rng from_seed(std::uint64_t master) { return Rng(mix(master)); }

  std::uint64_t next_u64() { return mix(key_ ^ (0x9E3779B97F4A7C15ULL * ++ctr_)); }

  // Uniform in [0, 1).
  double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }

  int next_bit() { return static_cast<int>(next_u64() >> 63); }

  bool bernoulli(double p) { return next_unit() < p; }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

}  // namespace polarjam
