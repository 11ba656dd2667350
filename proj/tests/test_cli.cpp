#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(TACT_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), int(buf.size()), pipe)) out += buf.data();
  int status = pclose(pipe);
  return RunResult{WEXITSTATUS(status), out};
}

nlohmann::json strip_timing(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  j["timing_ms"] = 0;
  return j;
}

}  // namespace

TEST_CASE("analyze reports word data") {
  auto r = run_cli("analyze --word abAB");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["schema_version"] == 1);
  auto& data = j["checks"][0]["computed"];
  CHECK(data["length"] == 4);
  CHECK(data["root_exponent"] == 1);
  CHECK(data["primitive"] == false);

  auto r2 = run_cli("analyze --word aA");
  auto j2 = nlohmann::json::parse(r2.output);
  CHECK(j2["checks"][0]["computed"]["identity"] == true);

  auto r3 = run_cli("analyze --word abab");
  auto j3 = nlohmann::json::parse(r3.output);
  CHECK(j3["checks"][0]["computed"]["root"] == "ab");
  CHECK(j3["checks"][0]["computed"]["root_exponent"] == 2);
}

TEST_CASE("parse and usage errors exit with code two") {
  CHECK(run_cli("analyze --word 'ab$'").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("analyze").exit_code == 2);
  CHECK(run_cli("analyze --word s1 --presentation F2").exit_code == 2);
}

TEST_CASE("bass-serre presentations work through the cli") {
  auto r = run_cli("analyze --word s1s2 --presentation 'free_rank=0;finite_orders=2,3'");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["checks"][0]["computed"]["translation_length"] == 2);
  auto r2 = run_cli("analyze --word s1 --presentation 'free_rank=0;finite_orders=2,3'");
  auto j2 = nlohmann::json::parse(r2.output);
  CHECK(j2["checks"][0]["computed"]["elliptic"] == true);
}

TEST_CASE("presentation files parse") {
  std::string path = "/tmp/tact_pres_test.cfg";
  {
    std::ofstream out(path);
    out << "free_rank = 1\nfinite_orders = 2\n";
  }
  auto r = run_cli("analyze --word 's1a' --presentation " + path);
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["checks"][0]["computed"]["translation_length"] == 3);
}

TEST_CASE("lemma suite passes and fails on demand") {
  auto r = run_cli("lemmas --budget-words 3 --budget-samples 20");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["overall_verdict"] == "pass");
  CHECK(j["checks"].size() >= 8);

  auto bad = run_cli("lemmas --budget-words 2 --budget-samples 5 --self-test-corrupt");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("deterministic output modulo timing") {
  std::string args = "lemmas --budget-words 3 --budget-samples 25 --seed 42";
  auto a = run_cli(args);
  auto b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(strip_timing(a.output).dump() == strip_timing(b.output).dump());

  std::string cargs = "complex --word abAB --pool-depth 2 --seed 7";
  CHECK(strip_timing(run_cli(cargs).output).dump() ==
        strip_timing(run_cli(cargs).output).dump());
}

TEST_CASE("complex command emits dot and errors on single-class pools") {
  auto r = run_cli("complex --word abAB --pool-depth 2 --format dot");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("graph quasi_tree {") == 0);

  // a pool of inner automorphisms by powers of g collapses to one class
  std::string pool_path = "/tmp/tact_pool_inner.txt";
  {
    std::ofstream out(pool_path);
    out << "inner abAB\n\ninner 1\n";
  }
  auto bad = run_cli("complex --word abAB --pool-file " + pool_path);
  CHECK(bad.exit_code == 2);
}

TEST_CASE("persistence command branches on primitivity") {
  auto prim = run_cli("persistence --word a");
  CHECK(prim.exit_code == 0);
  auto j = nlohmann::json::parse(prim.output);
  CHECK(j["checks"][0]["lemma_id"] == "basis-dehn-twist");
  CHECK(j["checks"][0]["computed"]["rows"].size() == 50);

  auto gen = run_cli("persistence --word abAB --pool-depth 2 --budget-m 5");
  CHECK(gen.exit_code == 0);
  auto j2 = nlohmann::json::parse(gen.output);
  CHECK(j2["checks"][0]["lemma_id"] == "persistence-estimate");
  CHECK(j2["checks"][0]["computed"]["n_hat"].size() == 3);

  auto csv = run_cli("persistence --word abAB --pool-depth 1 --budget-m 4 --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.output.find("pool_index,") == 0);
}

TEST_CASE("folds command exports move logs") {
  std::string path = "/tmp/tact_moves.txt";
  auto r = run_cli("folds --budget-samples 5 --export-moves " + path);
  CHECK(r.exit_code == 0);
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first.rfind("rescale", 0) == 0);
}

TEST_CASE("output lands in files with --out") {
  std::string path = "/tmp/tact_out.json";
  auto r = run_cli("analyze --word ab --out " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.empty());
  std::ifstream in(path);
  nlohmann::json j;
  in >> j;
  CHECK(j["overall_verdict"] == "pass");
}
