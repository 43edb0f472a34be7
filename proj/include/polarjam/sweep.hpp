#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "polarjam/metrics.hpp"
#include "polarjam/session.hpp"

namespace polarjam {

struct SweepSpec {
  std::vector<int> n_values;
  std::vector<double> beta_values;
  std::vector<std::int64_t> path_i_values;  // -1 means the corner i = N
  std::vector<int> m_values;
  ChannelParams channel;
  std::uint64_t trials = 0;        // sessions per point for empirical BLER
  std::uint64_t mc_trials = 100000;  // construction trials for non-corner paths
  std::uint64_t master_seed = 1;
  bool timing = false;  // off by default so CSVs replay byte-identically
};

struct MetricsRow {
  int n = 0;
  double beta = 0.0;
  int m = 1;
  std::int64_t path_i = 0;
  double leakage_bound = std::nan("");
  double bler_bound = std::nan("");
  double empirical_bler = std::nan("");
  double bler_ci95 = std::nan("");
  double r1 = std::nan("");
  double r2 = std::nan("");
  double sum_rate = std::nan("");
  std::uint64_t trials = 0;
  double wall_time = 0.0;
  std::string status = "ok";
};

inline const char* metrics_csv_header() {
  return "n,beta,m,path_i,leakage_bound,bler_bound,empirical_bler,bler_ci95,"
         "r1,r2,sum_rate,trials,wall_time,status";
}

namespace detail {

inline std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Wilson 95% interval half-width for k successes in n trials.
inline double wilson_halfwidth(std::uint64_t k, std::uint64_t n) {
  if (n == 0) return std::nan("");
  const double z = 1.959963984540054;
  const double nd = static_cast<double>(n);
  const double p = static_cast<double>(k) / nd;
  const double denom = 1.0 + z * z / nd;
  const double half =
      (z / denom) * std::sqrt(p * (1.0 - p) / nd + z * z / (4.0 * nd * nd));
  return half;
}

inline MetricsRow eval_point(int n, double beta, std::int64_t path_i, int m,
                             const SweepSpec& spec) {
  MetricsRow row;
  row.n = n;
  row.beta = beta;
  row.m = m;
  row.trials = spec.trials;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const std::size_t N = std::size_t{1} << n;
    const std::size_t ci =
        path_i < 0 ? N : static_cast<std::size_t>(path_i);
    row.path_i = static_cast<std::int64_t>(ci);
    ConstructionParams params{n, beta, spec.channel, make_path(ci, n)};
    params.validate();
    auto [l1, l2] = legit_profiles(params);
    const Rng master = Rng::from_seed(spec.master_seed);
    auto eve = eve_profile_for(
        params, spec.mc_trials,
        master.stream("sweep-construct", static_cast<std::uint64_t>(n),
                      static_cast<std::uint64_t>(ci)));

    // Rates are set counts and exist even when chaining is infeasible.
    const double delta = delta_threshold(n, beta);
    auto s1 = detail::strong_user_sets(l1, eve.user_z(1), delta);
    auto s2 = detail::strong_user_sets(l2, eve.user_z(2), delta);
    RateReport rates = strong_rate_report(params, s1, s2, m);
    row.r1 = rates.r1;
    row.r2 = rates.r2;
    row.sum_rate = rates.sum_rate();

    auto [part, rep] = build_strong_partition(params, l1, l2, eve, m);
    row.leakage_bound = leakage_upper_bound(eve, part, m);
    row.bler_bound = bler_upper_bound(l1, l2, part, m);

    if (spec.trials > 0) {
      SessionConfig cfg;
      cfg.params = params;
      cfg.m = m;
      std::uint64_t failures = 0;
      for (std::uint64_t t = 0; t < spec.trials; ++t) {
        cfg.master_seed = Rng::mix(spec.master_seed ^
                                   Rng::tag("sweep-session")) ^
                          Rng::mix(static_cast<std::uint64_t>(n) * 1000003 + t);
        Transcript tr = run_session(cfg, part, rep);
        if (!tr.success) ++failures;
      }
      row.empirical_bler =
          static_cast<double>(failures) / static_cast<double>(spec.trials);
      row.bler_ci95 = wilson_halfwidth(failures, spec.trials);
    }
  } catch (const NegativeSecrecyRateError& e) {
    row.status = std::string("negative-secrecy-rate user ") + std::to_string(e.user);
  } catch (const NotDegradedError&) {
    row.status = "not-degraded";
  } catch (const Error& e) {
    row.status = e.what();
    for (auto& c : row.status)
      if (c == ',' || c == '\n') c = ';';
  }
  if (spec.timing) {
    row.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
  }
  return row;
}

}  // namespace detail

inline std::vector<MetricsRow> run_sweep(const SweepSpec& spec) {
  struct Point {
    int n;
    double beta;
    std::int64_t path_i;
    int m;
  };
  std::vector<Point> grid;
  for (int n : spec.n_values)
    for (double beta : spec.beta_values)
      for (std::int64_t pi : spec.path_i_values)
        for (int m : spec.m_values) grid.push_back({n, beta, pi, m});

  // Work pool over self-contained points; rows assembled in grid order.
  std::vector<std::future<MetricsRow>> futs;
  futs.reserve(grid.size());
  for (const auto& g : grid)
    futs.push_back(std::async(std::launch::async, [g, &spec] {
      return detail::eval_point(g.n, g.beta, g.path_i, g.m, spec);
    }));
  std::vector<MetricsRow> rows;
  rows.reserve(grid.size());
  for (auto& f : futs) rows.push_back(f.get());
  return rows;
}

inline std::string metrics_to_csv(const std::vector<MetricsRow>& rows) {
  std::ostringstream out;
  out << metrics_csv_header() << "\n";
  for (const auto& r : rows) {
    out << r.n << ',' << detail::fmt_double(r.beta) << ',' << r.m << ','
        << r.path_i << ',' << detail::fmt_double(r.leakage_bound) << ','
        << detail::fmt_double(r.bler_bound) << ','
        << detail::fmt_double(r.empirical_bler) << ','
        << detail::fmt_double(r.bler_ci95) << ',' << detail::fmt_double(r.r1)
        << ',' << detail::fmt_double(r.r2) << ','
        << detail::fmt_double(r.sum_rate) << ',' << r.trials << ','
        << detail::fmt_double(r.wall_time) << ',' << r.status << "\n";
  }
  return out.str();
}

}  // namespace polarjam
