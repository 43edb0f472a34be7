#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef POLARJAM_CLI_PATH
#error "POLARJAM_CLI_PATH must be defined"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(POLARJAM_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("construct emits a full JSON document") {
  auto r = run_cli("construct --n 8 --beta 0.3 --seed 3");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["n"] == 8);
  CHECK(j["beta"] == 0.3);
  CHECK(j["path"].get<std::string>().size() == 512);
  CHECK(j["profiles"]["legit1"]["z"].size() == 256);
  CHECK(j["profiles"]["eve_path"]["z"].size() == 512);
  CHECK(j["strong"]["user1"].contains("I"));
  CHECK(j["rates"].contains("r_seed"));
  CHECK(j["degraded"] == true);
  CHECK(j["weak"]["user1"].contains("R"));
}

TEST_CASE("construct reports rates consistent with the region") {
  auto r = run_cli("construct --n 12 --beta 0.16");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["rates"]["r1"].get<double>() <= 0.5);
  CHECK(j["rates"]["sum_rate"].get<double>() <= 0.6);
  CHECK(j["rates"]["cap_sum"].get<double>() == Catch::Approx(0.6));
}

TEST_CASE("invalid input exits with code 2") {
  CHECK(run_cli("construct --n 8 --beta 0.7").exit_code == 2);
  CHECK(run_cli("construct --n -3").exit_code == 2);
  CHECK(run_cli("oracle --n 5").exit_code == 2);
  CHECK(run_cli("simulate --n 8 --frozen-policy sometimes").exit_code == 2);
}

TEST_CASE("constraint violations exit with code 3") {
  // negative secrecy rate for user 2 when chaining m=2 at this size
  CHECK(run_cli("simulate --n 10 --beta 0.3 --m 2").exit_code == 3);
  // weak construction requested for a non-degraded eavesdropper
  CHECK(run_cli("construct --n 8 --beta 0.3 --eps1 0.4 --eps2 0.4 --epse 0.2 --weak")
            .exit_code == 3);
}

TEST_CASE("simulate runs a session and dumps a replayable transcript") {
  const std::string t1 = "/tmp/polarjam_test_transcript1.json";
  const std::string t2 = "/tmp/polarjam_test_transcript2.json";
  auto r1 = run_cli("simulate --n 9 --beta 0.25 --m 1 --seed 11 --dump-transcript " + t1);
  REQUIRE(r1.exit_code == 0);
  auto summary = nlohmann::json::parse(r1.out);
  CHECK(summary.contains("success"));
  CHECK(summary["blocks"].size() == 1);
  auto r2 = run_cli("simulate --n 9 --beta 0.25 --m 1 --seed 11 --dump-transcript " + t2);
  REQUIRE(r2.exit_code == 0);
  // byte-identical transcripts for identical configs and seeds
  const auto a = slurp(t1);
  REQUIRE(!a.empty());
  REQUIRE(a == slurp(t2));
  auto tj = nlohmann::json::parse(a);
  CHECK(tj["blocks"].size() == 1);
  CHECK(tj.contains("config_secret_seeds"));
  std::remove(t1.c_str());
  std::remove(t2.c_str());
}

TEST_CASE("simulate accepts hex seeds") {
  // n=10 beta=0.3: user 2 has a nonempty R^b; supply its seed explicitly
  auto probe = run_cli("construct --n 10 --beta 0.3");
  REQUIRE(probe.exit_code == 0);
  auto pj = nlohmann::json::parse(probe.out);
  const std::size_t rb2 = pj["strong"]["user2"]["Rb"].size();
  REQUIRE(rb2 > 0);
  const std::string hex((rb2 + 3) / 4, 'a');
  auto r = run_cli("simulate --n 10 --beta 0.3 --m 1 --seed2 " + hex +
                   " --dump-transcript /tmp/polarjam_seeded.json");
  REQUIRE(r.exit_code == 0);
  auto tj = nlohmann::json::parse(slurp("/tmp/polarjam_seeded.json"));
  auto seed2 = tj["config_secret_seeds"]["seed2"];
  REQUIRE(seed2.size() == rb2);
  // hex 'a' = 0101 per low-first nibble convention
  CHECK(seed2[0] == 0);
  CHECK(seed2[1] == 1);
  std::remove("/tmp/polarjam_seeded.json");
  // malformed length
  CHECK(run_cli("simulate --n 10 --beta 0.3 --m 1 --seed2 ff00").exit_code == 2);
}

TEST_CASE("sweep emits deterministic CSV with the declared columns") {
  const std::string f1 = "/tmp/polarjam_sweep1.csv";
  const std::string f2 = "/tmp/polarjam_sweep2.csv";
  const std::string args =
      "sweep --n-list 6,8 --beta-list 0.25,0.3 --m-list 1 --trials 20 --seed 4 --out ";
  REQUIRE(run_cli(args + f1).exit_code == 0);
  REQUIRE(run_cli(args + f2).exit_code == 0);
  const auto a = slurp(f1);
  REQUIRE(a == slurp(f2));
  std::istringstream in(a);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "n,beta,m,path_i,leakage_bound,bler_bound,empirical_bler,bler_ci95,"
        "r1,r2,sum_rate,trials,wall_time,status");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
  std::remove(f1.c_str());
  std::remove(f2.c_str());
}

TEST_CASE("oracle checks dominance at small N") {
  auto r = run_cli("oracle --n 2 --beta 0.3 --m 1 --trials 20000 --seed 6");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["dominance_ok"] == true);
  CHECK(j["leakage_exact"].get<double>() <= j["leakage_bound"].get<double>() + 1e-9);
  CHECK(j["mac_profile_exact"]["z"].size() == 8);
  CHECK(j["mc_max_abs_deviation"].get<double>() < 0.03);
}
