// Command-line simulator for polar-coded cooperative jamming over the
// two-way erasure wiretap channel: code construction, chained sessions,
// parameter sweeps and exact small-N checks.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polarjam/metrics.hpp"
#include "polarjam/serialize.hpp"
#include "polarjam/session.hpp"
#include "polarjam/sweep.hpp"

namespace {

using polarjam::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitConstraint = 3;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw polarjam::InvalidInputError("cannot open output file " + out_path);
  f << text;
}

std::vector<std::uint8_t> parse_seed_hex(const std::string& hex, std::size_t bits) {
  return polarjam::BinaryBlock::from_hex(hex, bits).to_bits();
}

struct CommonOpts {
  int n = 8;
  double beta = 0.3;
  double eps1 = 0.2, eps2 = 0.3, epse = 0.4;
  std::int64_t path_i = -1;  // -1: corner i = N (user 1 decoded first at Eve)
  std::uint64_t seed = 1;
  std::string out;

  polarjam::ChannelParams channel() const { return {eps1, eps2, epse}; }

  std::size_t corner_i() const {
    const std::size_t N = std::size_t{1} << n;
    return path_i < 0 ? N : static_cast<std::size_t>(path_i);
  }

  polarjam::ConstructionParams params() const {
    return {n, beta, channel(), polarjam::make_path(corner_i(), n)};
  }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--n", o.n, "log2 block length");
  cmd->add_option("--beta", o.beta, "polarization exponent in (0, 1/2)");
  cmd->add_option("--eps1", o.eps1, "erasure probability of Bob's channel");
  cmd->add_option("--eps2", o.eps2, "erasure probability of Alice's channel");
  cmd->add_option("--epse", o.epse, "erasure probability of Eve's channel");
  cmd->add_option("--path-i", o.path_i,
                  "corner parameter i of the path 0^i 1^N 0^(N-i); default N");
  cmd->add_option("--seed", o.seed, "master RNG seed");
  cmd->add_option("--out", o.out, "output file (default stdout)");
}

int cmd_construct(const CommonOpts& o, std::uint64_t mc_trials, bool want_weak) {
  auto params = o.params();
  params.validate();
  auto [l1, l2] = polarjam::legit_profiles(params);
  const polarjam::Rng master = polarjam::Rng::from_seed(o.seed);
  auto eve = polarjam::eve_profile_for(params, mc_trials,
                                       master.stream("construction"));
  const double delta = polarjam::delta_threshold(params.n, params.beta);

  json j;
  j["n"] = params.n;
  j["beta"] = params.beta;
  j["delta"] = delta;
  j["channel"] = polarjam::to_json(params.channel);
  j["path"] = params.path.to_string();
  j["profiles"]["legit1"] = polarjam::to_json(l1);
  j["profiles"]["legit2"] = polarjam::to_json(l2);
  j["profiles"]["eve_path"] = polarjam::to_json(eve.prof);

  auto [part, rates] = polarjam::build_strong_partition(params, l1, l2, eve, 1);
  j["strong"] = polarjam::to_json(part);
  j["rates"] = polarjam::to_json(rates);
  j["leakage_bound_m1"] = polarjam::leakage_upper_bound(eve, part, 1);
  j["bler_bound_m1"] = polarjam::bler_upper_bound(l1, l2, part, 1);

  auto degraded = polarjam::check_degraded_inclusion(l1, l2, eve, delta);
  j["degraded"] = degraded.ok;
  if (degraded.ok) {
    auto [weak, weak_rates] = polarjam::build_weak_partition(params, l1, l2, eve);
    j["weak"] = polarjam::to_json(weak);
    j["weak_rates"] = polarjam::to_json(weak_rates);
  } else if (want_weak) {
    throw polarjam::NotDegradedError(degraded.violations,
                                     "weak construction requested but the "
                                     "eavesdropper channel is not degraded");
  } else {
    json viol = json::array();
    for (auto& [user, idx] : degraded.violations)
      viol.push_back(json{{"user", user}, {"index", idx}});
    j["weak"] = json{{"error", "not-degraded"}, {"violations", viol}};
  }
  write_output(j.dump(2), o.out);
  return kExitOk;
}

int cmd_simulate(const CommonOpts& o, int m, const std::string& seed1_hex,
                 const std::string& seed2_hex, const std::string& frozen_policy,
                 const std::string& dump_transcript) {
  polarjam::SessionConfig cfg{o.params(), m, o.seed, std::nullopt, std::nullopt,
                              polarjam::SessionConfig::FrozenPolicy::Reuse,
                              std::nullopt};
  if (frozen_policy == "fresh")
    cfg.frozen_policy = polarjam::SessionConfig::FrozenPolicy::Fresh;
  else if (frozen_policy != "reuse")
    throw polarjam::InvalidInputError("--frozen-policy must be reuse or fresh");

  cfg.params.validate();
  auto [l1, l2] = polarjam::legit_profiles(cfg.params);
  const polarjam::Rng master = polarjam::Rng::from_seed(cfg.master_seed);
  auto eve = polarjam::eve_profile_for(cfg.params, 100000,
                                       master.stream("construction"));
  auto [part, rates] =
      polarjam::build_strong_partition(cfg.params, l1, l2, eve, m);
  if (!seed1_hex.empty())
    cfg.seed1 = parse_seed_hex(seed1_hex, part.view1.chain_sink_pos.size());
  if (!seed2_hex.empty())
    cfg.seed2 = parse_seed_hex(seed2_hex, part.view2.chain_sink_pos.size());

  auto transcript = polarjam::run_session(cfg, part, rates);
  if (!dump_transcript.empty())
    write_output(polarjam::to_json(transcript).dump(2), dump_transcript);

  json j;
  j["success"] = transcript.success;
  j["first_failed_block"] = transcript.first_failed_block;
  j["m"] = transcript.m;
  j["rates"] = polarjam::to_json(transcript.rates);
  j["leakage_bound"] = polarjam::leakage_upper_bound(eve, part, m);
  j["bler_bound"] = polarjam::bler_upper_bound(l1, l2, part, m);
  json blocks = json::array();
  for (const auto& b : transcript.blocks)
    blocks.push_back(json{{"user1_ok", b.user1.dec.success},
                          {"user2_ok", b.user2.dec.success}});
  j["blocks"] = std::move(blocks);
  write_output(j.dump(2), o.out);
  return kExitOk;
}

int cmd_sweep(const CommonOpts& o, std::vector<int> n_list,
              std::vector<double> beta_list, std::vector<std::int64_t> pi_list,
              std::vector<int> m_list, std::uint64_t trials,
              std::uint64_t mc_trials, bool timing) {
  polarjam::SweepSpec spec;
  spec.n_values = n_list.empty() ? std::vector<int>{o.n} : std::move(n_list);
  spec.beta_values =
      beta_list.empty() ? std::vector<double>{o.beta} : std::move(beta_list);
  spec.path_i_values = pi_list.empty() ? std::vector<std::int64_t>{o.path_i}
                                       : std::move(pi_list);
  spec.m_values = m_list.empty() ? std::vector<int>{1} : std::move(m_list);
  spec.channel = o.channel();
  spec.trials = trials;
  spec.mc_trials = mc_trials;
  spec.master_seed = o.seed;
  spec.timing = timing;
  for (int n : spec.n_values)
    if (n < 0 || n > 20)
      throw polarjam::InvalidInputError("sweep: n must be in [0, 20]");
  auto rows = polarjam::run_sweep(spec);
  write_output(polarjam::metrics_to_csv(rows), o.out);
  return kExitOk;
}

int cmd_oracle(const CommonOpts& o, int m, std::uint64_t mc_trials) {
  auto params = o.params();
  params.validate();
  if (params.n > 2)
    throw polarjam::TooLargeError("oracle: n must be <= 2 for exact enumeration");
  auto [l1, l2] = polarjam::legit_profiles(params);
  auto exact = polarjam::exact_mac_profile_oracle(params.path, params.channel.epse);
  const polarjam::Rng master = polarjam::Rng::from_seed(o.seed);
  auto mc = polarjam::mc_mac_profile(params.path, params.channel.epse, mc_trials,
                                     master.stream("oracle-mc"));

  json j;
  j["n"] = params.n;
  j["m"] = m;
  j["path"] = params.path.to_string();
  j["mac_profile_exact"] = polarjam::to_json(exact.prof);
  j["mac_profile_mc"] = polarjam::to_json(mc.prof);
  double max_dev = 0.0;
  for (std::size_t k = 0; k < exact.prof.z.size(); ++k)
    max_dev = std::max(max_dev, std::abs(exact.prof.z[k] - mc.prof.z[k]));
  j["mc_max_abs_deviation"] = max_dev;

  auto [part, rates] = polarjam::build_strong_partition(params, l1, l2, exact, m);
  const double bound = polarjam::leakage_upper_bound(exact, part, m);
  const double leak = polarjam::exact_leakage_oracle(part, params.channel.epse, m);
  j["rates"] = polarjam::to_json(rates);
  j["leakage_exact"] = leak;
  j["leakage_bound"] = bound;
  j["dominance_ok"] = leak <= bound + 1e-9;
  write_output(j.dump(2), o.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "polarjam: polar-coded cooperative jamming simulator for the two-way "
      "erasure wiretap channel"};
  app.require_subcommand(1);

  CommonOpts oc, os, ow, oo;
  std::uint64_t mc_trials = 100000;
  bool want_weak = false;
  auto* construct =
      app.add_subcommand("construct", "build profiles, partitions and rates");
  add_common(construct, oc);
  construct->add_option("--trials", mc_trials,
                        "Monte-Carlo construction trials for non-corner paths");
  construct->add_flag("--weak", want_weak,
                      "fail (exit 3) unless the degraded weak construction exists");

  int m_sim = 1;
  std::string seed1_hex, seed2_hex, frozen_policy = "reuse", dump_transcript;
  auto* simulate =
      app.add_subcommand("simulate", "run one chained session, emit a summary");
  add_common(simulate, os);
  simulate->add_option("--m", m_sim, "number of chained blocks");
  simulate->add_option("--seed1", seed1_hex, "hex secret seed for user 1");
  simulate->add_option("--seed2", seed2_hex, "hex secret seed for user 2");
  simulate->add_option("--frozen-policy", frozen_policy, "reuse | fresh");
  simulate->add_option("--dump-transcript", dump_transcript,
                       "write the full transcript JSON to this path");

  std::vector<int> n_list, m_list;
  std::vector<double> beta_list;
  std::vector<std::int64_t> pi_list;
  std::uint64_t sweep_trials = 0, sweep_mc_trials = 100000;
  bool timing = false;
  auto* sweep = app.add_subcommand("sweep", "evaluate a parameter grid, emit CSV");
  add_common(sweep, ow);
  sweep->add_option("--n-list", n_list, "grid of n values")->delimiter(',');
  sweep->add_option("--beta-list", beta_list, "grid of beta values")->delimiter(',');
  sweep->add_option("--path-i-list", pi_list, "grid of path corner parameters")
      ->delimiter(',');
  sweep->add_option("--m-list", m_list, "grid of m values")->delimiter(',');
  sweep->add_option("--trials", sweep_trials, "sessions per grid point (0: bounds only)");
  sweep->add_option("--mc-trials", sweep_mc_trials,
                    "construction trials for non-corner paths");
  sweep->add_flag("--timing", timing, "measure wall time (breaks byte determinism)");

  int m_oracle = 1;
  std::uint64_t oracle_mc_trials = 100000;
  auto* oracle = app.add_subcommand(
      "oracle", "exact small-N checks: enumeration profile and leakage");
  add_common(oracle, oo);
  oracle->add_option("--m", m_oracle, "number of blocks (<= 2)");
  oracle->add_option("--trials", oracle_mc_trials, "Monte-Carlo cross-check trials");

  CLI11_PARSE(app, argc, argv);

  try {
    if (construct->parsed()) return cmd_construct(oc, mc_trials, want_weak);
    if (simulate->parsed())
      return cmd_simulate(os, m_sim, seed1_hex, seed2_hex, frozen_policy,
                          dump_transcript);
    if (sweep->parsed())
      return cmd_sweep(ow, n_list, beta_list, pi_list, m_list, sweep_trials,
                       sweep_mc_trials, timing);
    if (oracle->parsed()) return cmd_oracle(oo, m_oracle, oracle_mc_trials);
  } catch (const polarjam::NegativeSecrecyRateError& e) {
    std::cerr << "constraint violation: " << e.what() << "\n";
    return kExitConstraint;
  } catch (const polarjam::NotDegradedError& e) {
    std::cerr << "constraint violation: " << e.what() << "\n";
    return kExitConstraint;
  } catch (const polarjam::InvalidInputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const polarjam::TooLargeError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const polarjam::UnsupportedPathError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const polarjam::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
