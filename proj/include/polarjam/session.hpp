#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polarjam/codec.hpp"
#include "polarjam/eve_profile.hpp"
#include "polarjam/partition.hpp"
#include "polarjam/rng.hpp"

namespace polarjam {

// Test hook as much as protocol feature: corrupt one bit of the DECODER's
// copy of a secret seed, leaving the encoder's intact.
struct SeedFault {
  int user = 1;
  std::size_t bit = 0;
};

struct SessionConfig {
  ConstructionParams params;
  int m = 1;
  std::uint64_t master_seed = 1;
  std::optional<std::vector<std::uint8_t>> seed1;  // |R_1^b| bits
  std::optional<std::vector<std::uint8_t>> seed2;  // |R_2^b| bits
  enum class FrozenPolicy { Reuse, Fresh } frozen_policy = FrozenPolicy::Reuse;
  std::optional<SeedFault> decoder_seed_fault;
};

struct UserBlockRecord {
  EncoderInput enc_in;
  EncodedBlock enc;
  std::vector<std::uint8_t> decoder_chain_in;  // what the receiver assumed
  DecodeResult dec;
};

struct BlockRecord {
  UserBlockRecord user1, user2;
  std::vector<MacSymbol> y1, y2, ye;
};

struct RandomnessAccounting {
  std::uint64_t message_bits = 0;
  std::uint64_t fill_bits = 0;    // R^a and I^b
  std::uint64_t frozen_bits = 0;  // fresh draws only
  std::uint64_t seed_bits = 0;
  std::uint64_t det_bits = 0;
};

struct Transcript {
  StrongPartition partition;
  RateReport rates;
  int m = 1;
  std::uint64_t master_seed = 0;
  std::vector<std::uint8_t> seed1, seed2;
  SessionConfig::FrozenPolicy frozen_policy = SessionConfig::FrozenPolicy::Reuse;
  std::vector<BlockRecord> blocks;
  bool success = false;
  std::int64_t first_failed_block = -1;  // 0-based; -1 when clean
  RandomnessAccounting randomness;
};

namespace detail {

inline std::vector<std::uint8_t> random_bits(std::size_t n, Rng& rng) {
  std::vector<std::uint8_t> v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(rng.next_bit());
  return v;
}

}  // namespace detail

// The m-block chained session over the three erasure MACs. Both users
// transmit in every block (full duplex); each decoder consumes its own
// codeword as side information and the previous block's decoded I^b as the
// chain input. A failed decode feeds its wrong chain forward, as a real
// receiver would.
inline Transcript run_session(const SessionConfig& cfg,
                              const StrongPartition& part,
                              const RateReport& rates) {
  if (cfg.m < 1) throw InvalidInputError("run_session: m must be >= 1");
  if (cfg.m > 1) {
    for (int j : {1, 2}) {
      const auto& v = part.view(j);
      if (v.chain_src_pos.size() != v.chain_sink_pos.size())
        throw NegativeSecrecyRateError(
            j, v.chain_src_pos.size(), v.chain_sink_pos.size(),
            "run_session: partition cannot chain blocks for user " +
                std::to_string(j));
    }
  }
  const Rng master = Rng::from_seed(cfg.master_seed);

  Transcript tr;
  tr.partition = part;
  tr.rates = rates;
  tr.m = cfg.m;
  tr.master_seed = cfg.master_seed;
  tr.frozen_policy = cfg.frozen_policy;

  const UserCodeView* views[2] = {&part.view1, &part.view2};

  // Secret seeds: supplied as bits, or drawn from the master stream.
  std::vector<std::uint8_t> seeds[2];
  for (int j : {1, 2}) {
    const auto& opt = (j == 1) ? cfg.seed1 : cfg.seed2;
    const std::size_t want = views[j - 1]->chain_sink_pos.size();
    if (opt) {
      if (opt->size() != want)
        throw InvalidInputError("run_session: seed" + std::to_string(j) +
                                " must have " + std::to_string(want) + " bits");
      seeds[j - 1] = *opt;
    } else {
      Rng s = master.stream("seed", static_cast<std::uint64_t>(j));
      seeds[j - 1] = detail::random_bits(want, s);
    }
    tr.randomness.seed_bits += want;
  }
  tr.seed1 = seeds[0];
  tr.seed2 = seeds[1];

  // Frozen bits: drawn once and reused, or fresh per block.
  std::vector<std::uint8_t> frozen_reused[2];
  if (cfg.frozen_policy == SessionConfig::FrozenPolicy::Reuse) {
    for (int j : {1, 2}) {
      Rng f = master.stream("frozen", static_cast<std::uint64_t>(j));
      frozen_reused[j - 1] =
          detail::random_bits(views[j - 1]->frozen_pos.size(), f);
      tr.randomness.frozen_bits += frozen_reused[j - 1].size();
    }
  }

  std::vector<std::uint8_t> enc_chain[2] = {seeds[0], seeds[1]};
  std::vector<std::uint8_t> dec_chain[2] = {seeds[0], seeds[1]};
  if (cfg.decoder_seed_fault) {
    const auto& fault = *cfg.decoder_seed_fault;
    if (fault.user != 1 && fault.user != 2)
      throw InvalidInputError("run_session: fault user must be 1 or 2");
    auto& tampered = dec_chain[fault.user - 1];
    if (fault.bit >= tampered.size())
      throw InvalidInputError("run_session: fault bit out of range");
    tampered[fault.bit] ^= 1;
  }

  tr.success = true;
  for (int k = 0; k < cfg.m; ++k) {
    BlockRecord rec;
    UserBlockRecord* urec[2] = {&rec.user1, &rec.user2};
    for (int j : {1, 2}) {
      const auto& view = *views[j - 1];
      EncoderInput in;
      Rng msg = master.stream("message", static_cast<std::uint64_t>(j),
                              static_cast<std::uint64_t>(k));
      Rng fill = master.stream("fill", static_cast<std::uint64_t>(j),
                               static_cast<std::uint64_t>(k));
      in.message = detail::random_bits(view.message_pos.size(), msg);
      in.random_fill = detail::random_bits(view.fill_pos.size(), fill);
      in.chain_in = enc_chain[j - 1];
      if (cfg.frozen_policy == SessionConfig::FrozenPolicy::Reuse) {
        in.frozen = frozen_reused[j - 1];
      } else {
        Rng f = master.stream("frozen", static_cast<std::uint64_t>(j),
                              static_cast<std::uint64_t>(k));
        in.frozen = detail::random_bits(view.frozen_pos.size(), f);
        tr.randomness.frozen_bits += in.frozen.size();
      }
      tr.randomness.message_bits += in.message.size();
      tr.randomness.fill_bits += in.random_fill.size();

      Rng det = master.stream("det", static_cast<std::uint64_t>(j),
                              static_cast<std::uint64_t>(k));
      urec[j - 1]->enc_in = in;
      urec[j - 1]->enc = encode_block(view, in, det);
    }

    Rng ch1 = master.stream("channel", 1, static_cast<std::uint64_t>(k));
    Rng ch2 = master.stream("channel", 2, static_cast<std::uint64_t>(k));
    Rng che = master.stream("channel", 3, static_cast<std::uint64_t>(k));
    const auto& x1 = rec.user1.enc.x;
    const auto& x2 = rec.user2.enc.x;
    rec.y1 = transmit_adder_mac(x1, x2, cfg.params.channel.eps1, ch1);
    rec.y2 = transmit_adder_mac(x1, x2, cfg.params.channel.eps2, ch2);
    rec.ye = transmit_adder_mac(x1, x2, cfg.params.channel.epse, che);

    // Bob decodes user 1 from y1 with x2 as side information; Alice decodes
    // user 2 from y2 with x1.
    rec.user1.decoder_chain_in = dec_chain[0];
    rec.user2.decoder_chain_in = dec_chain[1];
    rec.user1.dec = decode_block(*views[0], rec.y1, x2, rec.user1.enc_in.frozen,
                                 dec_chain[0], rec.user1.enc.det_payload,
                                 &rec.user1.enc.u);
    rec.user2.dec = decode_block(*views[1], rec.y2, x1, rec.user2.enc_in.frozen,
                                 dec_chain[1], rec.user2.enc.det_payload,
                                 &rec.user2.enc.u);

    const bool ok = rec.user1.dec.success && rec.user2.dec.success;
    if (!ok && tr.first_failed_block < 0) tr.first_failed_block = k;
    tr.success = tr.success && ok;

    // Chain forward: encoders use their own true I^b bits, decoders what
    // they decoded.
    for (int j : {1, 2}) {
      const auto& view = *views[j - 1];
      auto& enc_next = enc_chain[j - 1];
      enc_next.clear();
      for (auto pos : view.chain_src_pos)
        enc_next.push_back(
            static_cast<std::uint8_t>(urec[j - 1]->enc.u.get(pos)));
      dec_chain[j - 1] = urec[j - 1]->dec.chain_out;
    }
    tr.blocks.push_back(std::move(rec));
  }
  return tr;
}

// Convenience overload: construct profiles and the partition, then run.
inline Transcript run_session(const SessionConfig& cfg,
                              std::uint64_t mc_trials = 100000) {
  cfg.params.validate();
  auto [l1, l2] = legit_profiles(cfg.params);
  const Rng master = Rng::from_seed(cfg.master_seed);
  auto eve = eve_profile_for(cfg.params, mc_trials, master.stream("construction"));
  auto [part, rates] = build_strong_partition(cfg.params, l1, l2, eve, cfg.m);
  return run_session(cfg, part, rates);
}

// R_seed, R_F, R_D for a built partition under m chained blocks.
inline RateReport randomness_rate_report(const SessionConfig& cfg,
                                         const StrongPartition& part) {
  if (cfg.m < 1) throw InvalidInputError("randomness_rate_report: m must be >= 1");
  const double N = static_cast<double>(std::size_t{1} << part.n);
  RateReport r;
  r.r1 = (static_cast<double>(part.user1.I.size()) -
          static_cast<double>(part.user1.Rb.size())) / N;
  r.r2 = (static_cast<double>(part.user2.I.size()) -
          static_cast<double>(part.user2.Rb.size())) / N;
  r.r_seed = static_cast<double>(part.user1.Rb.size() + part.user2.Rb.size()) /
             (2.0 * cfg.m * N);
  r.r_f = static_cast<double>(part.user1.F.size() + part.user2.F.size()) /
          (2.0 * cfg.m * N);
  r.r_d = static_cast<double>(part.view1.det_copy_pos.size() +
                              part.view2.det_copy_pos.size()) / (2.0 * N);
  fill_region_caps(cfg.params.channel, r);
  return r;
}

}  // namespace polarjam
