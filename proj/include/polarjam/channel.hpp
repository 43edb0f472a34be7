#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "polarjam/bits.hpp"
#include "polarjam/errors.hpp"
#include "polarjam/rng.hpp"

namespace polarjam {

// Output of the binary adder-erasure MAC: integer sum of the two inputs,
// or an erasure.
enum class MacSymbol : std::uint8_t { Zero = 0, One = 1, Two = 2, Erased = 3 };

// Output of a point-to-point BEC (or of a MAC reduced by side information).
enum class BecSymbol : std::uint8_t { Zero = 0, One = 1, Erased = 2 };

inline char to_char(MacSymbol s) {
  switch (s) {
    case MacSymbol::Zero: return '0';
    case MacSymbol::One: return '1';
    case MacSymbol::Two: return '2';
    default: return '?';
  }
}
inline char to_char(BecSymbol s) {
  switch (s) {
    case BecSymbol::Zero: return '0';
    case BecSymbol::One: return '1';
    default: return '?';
  }
}

struct ChannelParams {
  double eps1 = 0.2;  // Bob's observed channel
  double eps2 = 0.3;  // Alice's observed channel
  double epse = 0.4;  // Eve's observed channel

  void validate() const {
    for (double e : {eps1, eps2, epse})
      if (!(e >= 0.0 && e <= 1.0))
        throw InvalidInputError("erasure probability must be in [0,1]");
  }
};

// One block through the adder-erasure MAC: per position i.i.d., with
// probability 1-eps emit x1+x2 in {0,1,2}, otherwise an erasure.
inline std::vector<MacSymbol> transmit_adder_mac(const BinaryBlock& x1,
                                                 const BinaryBlock& x2,
                                                 double eps, Rng& rng) {
  if (x1.size() != x2.size())
    throw InvalidInputError("transmit_adder_mac: input length mismatch");
  if (!(eps >= 0.0 && eps <= 1.0))
    throw InvalidInputError("transmit_adder_mac: eps must be in [0,1]");
  std::vector<MacSymbol> y(x1.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (rng.next_unit() < eps)
      y[i] = MacSymbol::Erased;
    else
      y[i] = static_cast<MacSymbol>(x1.get(i) + x2.get(i));
  }
  return y;
}

// A legitimate user subtracts its own codeword from the adder output,
// turning the MAC into a BEC of the other user's codeword.
inline std::vector<BecSymbol> reduce_with_side_info(
    const std::vector<MacSymbol>& y, const BinaryBlock& x_own) {
  if (y.size() != x_own.size())
    throw InvalidInputError("reduce_with_side_info: length mismatch");
  std::vector<BecSymbol> r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == MacSymbol::Erased) {
      r[i] = BecSymbol::Erased;
      continue;
    }
    const int v = static_cast<int>(y[i]) - x_own.get(i);
    if (v != 0 && v != 1)
      throw CorruptedObservationError(
          "reduce_with_side_info: observation " + std::string(1, to_char(y[i])) +
          " inconsistent with own bit at position " + std::to_string(i));
    r[i] = static_cast<BecSymbol>(v);
  }
  return r;
}

struct BitPosterior {
  double p0 = 0.5;
  double p1 = 0.5;
};

// Exact single-use posterior of one user's input bit given the MAC output,
// under uniform i.i.d. inputs. With the other bit known the channel is a
// BEC; with it unknown, y=1 and erasures are uninformative while y=0 and
// y=2 reveal the bit.
inline BitPosterior single_use_eve_posteriors(MacSymbol y, int known_other = -1) {
  if (y == MacSymbol::Erased) return {0.5, 0.5};
  if (known_other >= 0) {
    const int v = static_cast<int>(y) - (known_other & 1);
    if (v != 0 && v != 1)
      throw CorruptedObservationError(
          "single_use_eve_posteriors: output impossible given known bit");
    return v == 0 ? BitPosterior{1.0, 0.0} : BitPosterior{0.0, 1.0};
  }
  switch (y) {
    case MacSymbol::Zero: return {1.0, 0.0};
    case MacSymbol::Two: return {0.0, 1.0};
    default: return {0.5, 0.5};  // y = 1: both (0,1) and (1,0) fit
  }
}

}  // namespace polarjam
