#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarjam/bits.hpp"
#include "polarjam/channel.hpp"
#include "polarjam/errors.hpp"
#include "polarjam/gf2.hpp"
#include "polarjam/partition.hpp"
#include "polarjam/prefix.hpp"
#include "polarjam/rng.hpp"
#include "polarjam/sc_erasure.hpp"

namespace polarjam {

struct EncoderInput {
  std::vector<std::uint8_t> message;      // I^a, ascending position order
  std::vector<std::uint8_t> chain_in;     // R^b: seed in block 1, then I^b of k-1
  std::vector<std::uint8_t> random_fill;  // R^a and I^b merged, ascending
  std::vector<std::uint8_t> frozen;       // F
};

struct EncodedBlock {
  BinaryBlock u;  // polarized block
  BinaryBlock c;  // auxiliary codeword, c = u G_N
  BinaryBlock x;  // transmitted codeword (x = c under identity prefixing)
  std::vector<std::uint8_t> det_payload;  // D outside L, conveyed out of band
};

struct DecodeResult {
  BinaryBlock u_hat;
  std::vector<std::uint8_t> message_hat;
  std::vector<std::uint8_t> chain_out;  // decoded I^b, feeds the next block
  bool success = false;                 // against ground truth when supplied
  bool contradiction = false;
  std::int64_t first_error = -1;  // genie: first index differing from truth
};

namespace detail {

inline void require_len(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw InvalidInputError(std::string(what) + ": expected " +
                            std::to_string(want) + " bits, got " +
                            std::to_string(got));
}

}  // namespace detail

// Assemble the u block from its six-way assignment. Deterministic positions
// are sampled from P(u^i | u^{1:i-1}), which is the fair coin under uniform
// inputs (D is empty then anyway).
inline BinaryBlock assemble_u(const UserCodeView& view, const EncoderInput& in,
                              Rng& rng) {
  detail::require_len(in.message.size(), view.message_pos.size(), "message");
  detail::require_len(in.chain_in.size(), view.chain_sink_pos.size(), "chain_in");
  detail::require_len(in.random_fill.size(), view.fill_pos.size(), "random_fill");
  detail::require_len(in.frozen.size(), view.frozen_pos.size(), "frozen");
  BinaryBlock u(view.N);
  std::size_t im = 0, ic = 0, ir = 0, ifr = 0;
  for (std::size_t i = 0; i < view.N; ++i) {
    switch (view.role[i]) {
      case Role::Message: u.set(i, in.message[im++]); break;
      case Role::ChainSink: u.set(i, in.chain_in[ic++]); break;
      case Role::ChainSource:
      case Role::RandomFill: u.set(i, in.random_fill[ir++]); break;
      case Role::Frozen: u.set(i, in.frozen[ifr++]); break;
      case Role::Deterministic: u.set(i, rng.next_bit()); break;
    }
  }
  return u;
}

inline EncodedBlock encode_block(const UserCodeView& view, const EncoderInput& in,
                                 Rng& rng, const PrefixModel* prefix = nullptr) {
  EncodedBlock blk;
  blk.u = assemble_u(view, in, rng);
  blk.c = polar_transform(blk.u);
  if (prefix == nullptr || prefix->is_identity()) {
    blk.x = blk.c;
  } else {
    auto [v, x] = sample_prefixed_codeword(blk.c, *prefix, rng);
    blk.x = std::move(x);
  }
  blk.det_payload.reserve(view.det_copy_pos.size());
  for (auto i : view.det_copy_pos)
    blk.det_payload.push_back(static_cast<std::uint8_t>(blk.u.get(i)));
  return blk;
}

// SC decode of one user's block from the reduced observations. Positions
// outside L are copied from the supplied frozen / chain / out-of-band bits;
// positions in L are decided by posterior argmax with ties broken to 0.
inline DecodeResult decode_block(const UserCodeView& view,
                                 const std::vector<MacSymbol>& y,
                                 const BinaryBlock& x_own,
                                 const std::vector<std::uint8_t>& frozen,
                                 const std::vector<std::uint8_t>& chain_in,
                                 const std::vector<std::uint8_t>& det_payload,
                                 const BinaryBlock* ground_truth_u = nullptr) {
  detail::require_len(frozen.size(), view.frozen_pos.size(), "frozen");
  detail::require_len(chain_in.size(), view.chain_sink_pos.size(), "chain_in");
  detail::require_len(det_payload.size(), view.det_copy_pos.size(), "det_payload");
  const auto obs = reduce_with_side_info(y, x_own);
  detail::require_len(obs.size(), view.N, "observations");

  ErasureScEngine eng(obs, /*strict=*/false);
  DecodeResult res;
  res.u_hat = BinaryBlock(view.N);
  std::size_t ic = 0, ifr = 0, id = 0;
  for (std::size_t i = 0; i < view.N; ++i) {
    int bit;
    if (view.in_L[i]) {
      bit = eng.next_belief() == Belief::One ? 1 : 0;
    } else {
      switch (view.role[i]) {
        case Role::Frozen: bit = frozen[ifr++]; break;
        case Role::ChainSink: bit = chain_in[ic++]; break;
        case Role::Deterministic: bit = det_payload[id++]; break;
        default:
          throw InvalidInputError("decode_block: information role outside L");
      }
    }
    eng.push_next(bit);
    res.u_hat.set(i, bit);
  }
  res.contradiction = eng.contradiction_count() > 0;
  res.message_hat.reserve(view.message_pos.size());
  for (auto i : view.message_pos)
    res.message_hat.push_back(static_cast<std::uint8_t>(res.u_hat.get(i)));
  res.chain_out.reserve(view.chain_src_pos.size());
  for (auto i : view.chain_src_pos)
    res.chain_out.push_back(static_cast<std::uint8_t>(res.u_hat.get(i)));
  if (ground_truth_u != nullptr) {
    res.success = res.u_hat == *ground_truth_u;
    if (!res.success) {
      for (std::size_t i = 0; i < view.N; ++i) {
        if (res.u_hat.get(i) != ground_truth_u->get(i)) {
          res.first_error = static_cast<std::int64_t>(i);
          break;
        }
      }
    }
  }
  return res;
}

}  // namespace polarjam
