#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "polarjam/channel.hpp"
#include "polarjam/partition.hpp"
#include "polarjam/profile.hpp"
#include "polarjam/session.hpp"

namespace polarjam {

using json = nlohmann::ordered_json;

inline json to_json(const ReliabilityProfile& p) {
  json j;
  j["kind"] = p.kind == ReliabilityProfile::Kind::Exact ? "exact" : "monte-carlo";
  j["z"] = p.z;
  if (p.kind == ReliabilityProfile::Kind::MonteCarlo) {
    j["stderr"] = p.stderr_z;
    j["trials"] = p.trials;
  }
  return j;
}

inline json to_json(const ChannelParams& c) {
  return json{{"eps1", c.eps1}, {"eps2", c.eps2}, {"epse", c.epse}};
}

inline json to_json(const RateReport& r) {
  json j;
  j["r1"] = r.r1;
  j["r2"] = r.r2;
  j["sum_rate"] = r.sum_rate();
  j["r_seed"] = r.r_seed;
  j["r_f"] = r.r_f;
  j["r_d"] = r.r_d;
  j["cap_r1"] = r.cap_r1;
  j["cap_r2"] = r.cap_r2;
  j["cap_sum"] = r.cap_sum;
  j["tvd_term_omitted"] = true;
  return j;
}

inline json to_json(const UserSets& s) {
  json j;
  j["I"] = s.I;
  j["Ia"] = s.Ia;
  j["Ib"] = s.Ib;
  j["F"] = s.F;
  j["Ra"] = s.Ra;
  j["Rb"] = s.Rb;
  j["D"] = s.D;
  return j;
}

inline json to_json(const WeakUserSets& s) {
  json j;
  j["I"] = s.I;
  j["F"] = s.F;
  j["R"] = s.R;
  j["D"] = s.D;
  return j;
}

inline json to_json(const StrongPartition& p) {
  json j;
  j["n"] = p.n;
  j["delta"] = p.delta;
  j["path"] = p.path.to_string();
  j["user1"] = to_json(p.user1);
  j["user2"] = to_json(p.user2);
  return j;
}

inline json to_json(const WeakPartition& p) {
  json j;
  j["n"] = p.n;
  j["delta"] = p.delta;
  j["path"] = p.path.to_string();
  j["user1"] = to_json(p.user1);
  j["user2"] = to_json(p.user2);
  return j;
}

inline std::string symbols_to_string(const std::vector<MacSymbol>& y) {
  std::string s(y.size(), '?');
  for (std::size_t i = 0; i < y.size(); ++i) s[i] = to_char(y[i]);
  return s;
}

inline json to_json(const EncoderInput& in) {
  json j;
  j["message"] = in.message;
  j["chain_in"] = in.chain_in;
  j["random_fill"] = in.random_fill;
  j["frozen"] = in.frozen;
  return j;
}

inline json to_json(const DecodeResult& d) {
  json j;
  j["u_hat_hex"] = d.u_hat.to_hex();
  j["message_hat"] = d.message_hat;
  j["chain_out"] = d.chain_out;
  j["success"] = d.success;
  j["contradiction"] = d.contradiction;
  j["first_error"] = d.first_error;
  return j;
}

inline json to_json(const UserBlockRecord& u) {
  json j;
  j["encoder_input"] = to_json(u.enc_in);
  j["u_hex"] = u.enc.u.to_hex();
  j["x_hex"] = u.enc.x.to_hex();
  j["det_payload"] = u.enc.det_payload;
  j["decoder_chain_in"] = u.decoder_chain_in;
  j["decode"] = to_json(u.dec);
  return j;
}

inline json to_json(const Transcript& t) {
  json j;
  j["m"] = t.m;
  j["master_seed"] = t.master_seed;
  j["frozen_policy"] =
      t.frozen_policy == SessionConfig::FrozenPolicy::Reuse ? "reuse" : "fresh";
  j["rates"] = to_json(t.rates);
  j["partition"] = to_json(t.partition);
  // Seeds are secret configuration, never part of any channel record.
  j["config_secret_seeds"] = json{{"seed1", t.seed1}, {"seed2", t.seed2}};
  j["success"] = t.success;
  j["first_failed_block"] = t.first_failed_block;
  j["randomness"] = json{{"message_bits", t.randomness.message_bits},
                         {"fill_bits", t.randomness.fill_bits},
                         {"frozen_bits", t.randomness.frozen_bits},
                         {"seed_bits", t.randomness.seed_bits},
                         {"det_bits", t.randomness.det_bits}};
  json blocks = json::array();
  for (const auto& b : t.blocks) {
    json jb;
    jb["user1"] = to_json(b.user1);
    jb["user2"] = to_json(b.user2);
    jb["y1"] = symbols_to_string(b.y1);
    jb["y2"] = symbols_to_string(b.y2);
    jb["ye"] = symbols_to_string(b.ye);
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

// What an eavesdropper-side evaluation is allowed to see: channel outputs,
// frozen bits and the public construction. No seeds, messages or fills.
inline json eve_view_json(const Transcript& t) {
  json j;
  j["m"] = t.m;
  j["partition"] = to_json(t.partition);
  json blocks = json::array();
  for (const auto& b : t.blocks) {
    json jb;
    jb["ye"] = symbols_to_string(b.ye);
    jb["frozen1"] = b.user1.enc_in.frozen;
    jb["frozen2"] = b.user2.enc_in.frozen;
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

}  // namespace polarjam
