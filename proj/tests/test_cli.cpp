#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "altnet/builders.hpp"

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(ALTNET_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

nlohmann::json parse_json(const std::string& text) {
  return nlohmann::json::parse(text);
}

}  // namespace

TEST_CASE("capacity subcommand reports formula, bounds and gain") {
  CliResult r = run_cli("capacity --scenario ic2 --lambda 1/3,1/3,1/3,0 --json");
  REQUIRE(r.exit_code == 0);
  auto j = parse_json(r.out);
  CHECK(j["capacity"]["rational"] == "4/3");
  CHECK(j["bounds"]["Z-bound"]["rational"] == "4/3");
  CHECK(j["bounds"]["min"]["rational"] == "4/3");
  CHECK(j["baseline"]["rational"] == "1");
  CHECK(j["gain"]["rational"] == "1/3");
}

TEST_CASE("capacity enforces the symmetric precondition for x2") {
  CliResult r = run_cli("capacity --scenario x2 --lambda 1/2,1/4,1/4,0 --json");
  CHECK(r.exit_code == 2);
  CliResult ok = run_cli("capacity --scenario x2 --lambda 1/4,1/4,1/4,1/4 --json");
  REQUIRE(ok.exit_code == 0);
  CHECK(parse_json(ok.out)["capacity"]["rational"] == "3/2");
}

TEST_CASE("capacity bc2 includes the CSIT equivalence table") {
  CliResult r = run_cli("capacity --scenario bc2 --lambda 1/2,1/2,0,0 --json");
  REQUIRE(r.exit_code == 0);
  auto j = parse_json(r.out);
  CHECK(j["capacity"]["rational"] == "3/2");
  CHECK(j["csit_equivalence"]["A"] == "NP");
  CHECK(j["csit_equivalence"]["D"] == "PP");
}

TEST_CASE("capacity sweep emits a CSV grid") {
  CliResult r = run_cli("capacity --scenario ic2 --sweep 2");
  REQUIRE(r.exit_code == 0);
  // header + C(2+3,3) = 10 grid points
  int lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines == 11);
  CHECK(r.out.find("lambda_a,lambda_b,lambda_c,lambda_d,capacity") == 0);
}

TEST_CASE("verify passes the built-in joint codes") {
  CliResult r = run_cli("verify --builtin ic2-joint-abc --mode worst --p 3 --json");
  REQUIRE(r.exit_code == 0);
  auto j = parse_json(r.out);
  CHECK(j["verdict"] == true);
  CHECK(j["realizations_total"] == 1024);
  CHECK(j["scheme_rate"]["rational"] == "4/3");

  CliResult r5 = run_cli("verify --builtin bc2-joint-ab --mode worst --p 5 --json");
  REQUIRE(r5.exit_code == 0);
  CHECK(parse_json(r5.out)["verdict"] == true);
}

TEST_CASE("verify exits 1 on a failing scheme") {
  // one fully connected slot with a fresh symbol per transmitter
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "altnet_cli_test";
  fs::create_directories(dir);
  fs::path path = dir / "bad.scheme";
  {
    altnet::FieldSpec f3(3);
    altnet::StateSequence seq = altnet::sequence_of_two_user_ids(
        std::array{altnet::TwoUserStateId::C});
    altnet::LinearScheme s(f3, seq, altnet::MessageConfig::ic(2, {0, 1}));
    s.add_entry(0, 0, 0, 1);
    s.add_entry(1, 0, 1, 1);
    std::ofstream f(path);
    f << altnet::format_scheme(s);
  }
  CliResult r = run_cli("verify --scheme " + path.string() + " --mode worst --json");
  CHECK(r.exit_code == 1);
  auto j = parse_json(r.out);
  CHECK(j["verdict"] == false);
  CHECK_FALSE(j["counterexample"].is_null());
}

TEST_CASE("verify rejects corrupted scheme files with exit code 2") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "altnet_cli_test";
  fs::create_directories(dir);
  fs::path path = dir / "corrupt.scheme";
  {
    altnet::FieldSpec f3(3);
    std::string text = altnet::format_scheme(altnet::ic2_joint_abc_scheme(f3));
    auto pos = text.find("1 0 0 0");
    text.replace(pos, 7, "0 0 0 0");  // zero column
    std::ofstream f(path);
    f << text;
  }
  CliResult r = run_cli("verify --scheme " + path.string() + " --mode worst");
  CHECK(r.exit_code == 2);
}

TEST_CASE("search finds the single-state and joint values") {
  CliResult r = run_cli("search --users 2 --sequence A --p 3 --mode worst --json");
  REQUIRE(r.exit_code == 0);
  auto j = parse_json(r.out);
  CHECK(j["best_rate"]["rational"] == "1");
  CHECK(j["exhaustive"] == true);

  CliResult d = run_cli("search --users 2 --sequence D --p 3 --json");
  REQUIRE(d.exit_code == 0);
  CHECK(parse_json(d.out)["best_rate"]["rational"] == "2");
}

TEST_CASE("search exits 3 when the budget is too small") {
  CliResult r =
      run_cli("search --users 2 --sequence A,B,C --p 3 --budget 10 --json");
  CHECK(r.exit_code == 3);
}

TEST_CASE("simulate reproduces the broadcast example and is deterministic") {
  std::string args =
      "simulate --scenario bc2 --lambda 1/2,1/2,0,0 --n 2 --p 5 --seed 3 --json";
  CliResult a = run_cli(args);
  REQUIRE(a.exit_code == 0);
  auto ja = parse_json(a.out);
  CHECK(ja["achieved"]["rational"] == "3/2");
  CHECK(ja["decode_failures"] == 0);

  CliResult b = run_cli(args);
  auto jb = parse_json(b.out);
  ja.erase("timing");
  jb.erase("timing");
  CHECK(ja.dump() == jb.dump());
}

TEST_CASE("simulate rejects bad usage with exit code 2") {
  CHECK(run_cli("simulate --scenario ic2 --n 10").exit_code == 2);  // no lambda
  CHECK(run_cli("simulate --scenario ic2 --lambda 0.1,0.9,0,0 --n 10").exit_code ==
        2);
  CHECK(run_cli("bogus-subcommand").exit_code == 2);
}

TEST_CASE("find-examples emits certified pairs and witness files") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "altnet_cli_examples";
  fs::remove_all(dir);
  fs::create_directories(dir);
  CliResult r = run_cli("find-examples --p 3 --json --witness-dir " + dir.string());
  REQUIRE(r.exit_code == 0);
  auto j = parse_json(r.out);
  CHECK(j["count"].get<int>() > 0);
  const auto& first = j["examples"][0];
  CHECK(first["profile"]["pass"] == true);
  CHECK(first["profile"]["joint"]["rational"] == "3/2");
  CHECK(fs::exists(dir / "example1.topo"));
  CHECK(fs::exists(dir / "example1.scheme"));
}
