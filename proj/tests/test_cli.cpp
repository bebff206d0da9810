#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "ksim/json_io.hpp"

// Drives the installed binary end to end: output shapes, exit codes
// (0 = verified, 1 = verification failed, 2 = bad input), determinism of the
// one-shot battery, and conformance with the published report schema.

using ksim::json;

namespace {

struct CmdResult {
  int exit_code;
  std::string out;
};

std::string temp_path(const std::string& stem) {
  return "/tmp/ksim_cli_" + std::to_string((long)getpid()) + "_" + stem;
}

CmdResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string capture = temp_path("out" + std::to_string(counter++) + ".txt");
  const std::string cmd = std::string(KSIM_CLI_PATH) + " " + args + " > " + capture + " 2>&1";
  int status = std::system(cmd.c_str());
  int code = -1;
  if (status != -1 && WIFEXITED(status)) code = WEXITSTATUS(status);
  std::ifstream f(capture);
  std::stringstream ss;
  ss << f.rdbuf();
  std::remove(capture.c_str());
  return {code, ss.str()};
}

std::string write_file(const std::string& stem, const std::string& content) {
  const std::string path = temp_path(stem);
  std::ofstream(path) << content;
  return path;
}

// the cataloged multiplier-2 similarity, saved once as a matrix file
const std::string& p2_matrix_file() {
  static const std::string path = [] {
    CmdResult r = run_cli("catalog show --name lambda_p2_sqrt2");
    if (r.exit_code != 0) throw std::runtime_error("catalog show failed:\n" + r.out);
    return write_file("p2_sim.json", json::parse(r.out).dump());
  }();
  return path;
}

// 2x2 self-adjoint multiplier-2 witness on <-2,-2>, saved as a matrix file
const std::string& find_matrix_file() {
  static const std::string path = [] {
    CmdResult r = run_cli("sim find --space '<-2,-2>' --d 2");
    if (r.exit_code != 0) throw std::runtime_error("sim find failed:\n" + r.out);
    return write_file("find_sim.json", json::parse(r.out).dump());
  }();
  return path;
}

bool hex16(const std::string& s) {
  if (s.size() != 16) return false;
  for (char c : s)
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  return true;
}

}  // namespace

TEST_CASE("cli: invariants and diagonalization") {
  CmdResult r = run_cli("quad invariants --space u");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("label") == "U");
  CHECK(j.at("dim") == 2);
  CHECK(j.at("det_square_class") == "-1");
  CHECK(j.at("signature") == json::array({1, 1}));

  r = run_cli("quad diagonalize --space u");
  REQUIRE(r.exit_code == 0);
  j = json::parse(r.out);
  CHECK(j.at("diag").size() == 2);
  CHECK(j.at("base_change").size() == 2);
}

TEST_CASE("cli: isometry decisions with literals and aliases") {
  CmdResult r = run_cli("quad isometric --a e8m2 --b '<-2>^8'");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("check") == "isometric");
  CHECK(j.at("pass") == true);

  r = run_cli("quad isometric --a '<1,1>' --b '<3,3>'");
  CHECK(r.exit_code == 1);
  j = json::parse(r.out);
  CHECK(j.at("pass") == false);
  CHECK(j.at("a").at("dim") == 2);
}

TEST_CASE("cli: embedding witness verification") {
  const std::string good = write_file("embed_good.json", "[[1,0],[0,1],[0,0]]");
  CmdResult r = run_cli("quad embed-verify --witness " + good +
                        " --sub '<1,-1>' --amb '<1,-1,-2>'");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.out).at("pass") == true);
  std::remove(good.c_str());

  const std::string bad = write_file("embed_bad.json", "[[1,0],[0,1],[0,1]]");
  r = run_cli("quad embed-verify --witness " + bad +
              " --sub '<1,-1>' --amb '<1,-1,-2>'");
  CHECK(r.exit_code == 1);
  json j = json::parse(r.out);
  CHECK(j.at("pass") == false);
  CHECK(j.at("witness").contains("row"));
  std::remove(bad.c_str());
}

TEST_CASE("cli: similarity verification against the catalog") {
  CmdResult r = run_cli("sim verify --space lambda_p2_diag --matrix " + p2_matrix_file());
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("pass") == true);
  CHECK(j.at("multiplier") == "2");
  CHECK(j.at("self_adjoint") == true);

  // breaking one entry turns the same invocation into a failing report
  json sim = json::parse(std::ifstream(p2_matrix_file()), nullptr, true);
  sim["matrix"][0][0] = "99";
  const std::string broken = write_file("p2_broken.json", sim.dump());
  r = run_cli("sim verify --space lambda_p2_diag --matrix " + broken);
  CHECK(r.exit_code == 1);
  j = json::parse(r.out);
  CHECK(j.at("pass") == false);
  CHECK(j.at("witness").at("error") == "NotASimilarity");
  std::remove(broken.c_str());
}

TEST_CASE("cli: eigen, locus, period on the cataloged similarity") {
  CmdResult r =
      run_cli("sim eigen --space lambda_p2_diag --matrix " + p2_matrix_file() + " --d 2");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("d0") == 2);
  CHECK(j.at("signature_plus") == json::array({2, 4}));
  CHECK(j.at("signature_minus") == json::array({0, 6}));

  r = run_cli("sim locus --space lambda_p2_diag --matrix " + p2_matrix_file() + " --d 2");
  REQUIRE(r.exit_code == 0);
  j = json::parse(r.out);
  CHECK(j.at("empty") == false);
  CHECK(j.at("dim") == 4);

  r = run_cli("ks period --space lambda_p2_diag --matrix " + p2_matrix_file() +
              " --d 2 --side plus");
  REQUIRE(r.exit_code == 0);
  j = json::parse(r.out);
  CHECK(j.at("found") == true);
  CHECK(j.at("pass") == true);
  CHECK(j.at("check").at("check") == "period_point");

  r = run_cli("ks period --space lambda_p2_diag --matrix " + p2_matrix_file() +
              " --d 2 --side minus");
  REQUIRE(r.exit_code == 0);
  j = json::parse(r.out);
  CHECK(j.at("found") == false);
  CHECK(j.at("pass") == true);
}

TEST_CASE("cli: similarity search reports witnesses and obstructions") {
  CmdResult r = run_cli("sim find --space '<-2,-2>' --d 2");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("pass") == true);
  CHECK(j.at("obstruction") == "none");
  CHECK(j.at("matrix") ==
        json::parse(R"([["-41/29","-1/29"],["-1/29","41/29"]])"));

  r = run_cli("sim find --space '<1,1>' --d -2");
  CHECK(r.exit_code == 1);
  j = json::parse(r.out);
  CHECK(j.at("pass") == false);
  CHECK(j.at("obstruction") == "signature_mismatch");
  CHECK(j.at("witness").contains("reason"));
}

TEST_CASE("cli: kummer similarities") {
  CmdResult r = run_cli("sim kummer --n 1 --k 2");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("n_prime") == 3);
  CHECK(j.at("multiplier") == "2");
  CHECK(j.at("source").at("label") == "U^3+<-8>");
  CHECK(j.at("target").at("label") == "U^3+<-4>");
}

TEST_CASE("cli: clifford layer") {
  CmdResult r = run_cli("cl build --space '<1,-1,-2>'");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("n") == 3);
  CHECK(j.at("even_dim") == 4);

  r = run_cli("cl iso --space '<-2,-2>' --matrix " + find_matrix_file());
  REQUIRE(r.exit_code == 0);
  j = json::parse(r.out);
  CHECK(j.at("multiplier") == "2");
  CHECK(j.at("gen_images").size() == 2);

  r = run_cli("cl verify --space '<-2,-2>' --matrix " + find_matrix_file() +
              " --exhaustive");
  REQUIRE(r.exit_code == 0);
  j = json::parse(r.out);
  CHECK(j.at("pass") == true);
  CHECK(j.at("details").at("mode") == "full_basis");

  r = run_cli("cl trace-form --space '<-2,-2>' --matrix " + find_matrix_file() +
              " --samples 20");
  REQUIRE(r.exit_code == 0);
  j = json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0].at("pass") == true);
  CHECK(j[1].at("pass") == true);
  // a negative definite space has no positive pair, so compatibility is vacuous
  CHECK(j[1].at("details").at("vacuous") == true);

  r = run_cli("cl phi-square --space '<-2,-2>' --matrix " + find_matrix_file() +
              " --samples 10");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.out).at("pass") == true);
}

TEST_CASE("cli: numeric complex-structure layer") {
  CmdResult r = run_cli("ks jstruct --space '<1,1,-1>' --convention beauville");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("pass") == true);
  CHECK(j.at("jsquare_residual").get<double>() <= 1e-9);

  // the polarized convention wants a negative plane, which this space lacks
  r = run_cli("ks jstruct --space '<1,1,-1>' --convention polarized");
  CHECK(r.exit_code == 1);
  j = json::parse(r.out);
  CHECK(j.at("pass") == false);
  CHECK(j.at("witness").at("error") == "ConventionError");

  r = run_cli("ks linearity --space lambda_p2_diag --matrix " + p2_matrix_file() +
              " --coords 0,1,4,5");
  REQUIRE(r.exit_code == 0);
  j = json::parse(r.out);
  CHECK(j.at("check") == "complex_linearity");
  CHECK(j.at("pass") == true);

  r = run_cli("ks polarization --space '<1,1,-1,-1>' --samples 50");
  REQUIRE(r.exit_code == 0);
  j = json::parse(r.out);
  CHECK(j.at("check") == "polarization_sign");
  CHECK(j.at("pass") == true);
  CHECK(j.at("details").at("sign") == -1);
}

TEST_CASE("cli: catalog listing and display") {
  CmdResult r = run_cli("catalog list");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  auto contains = [](const json& arr, const std::string& name) {
    for (const auto& e : arr)
      if (e == name) return true;
    return false;
  };
  CHECK(contains(j.at("lattices"), "U"));
  CHECK(contains(j.at("lattices"), "E8(-2)"));
  CHECK(contains(j.at("spaces"), "lambda_p2"));
  CHECK(contains(j.at("similarities"), "lambda_p2_sqrt2"));
  CHECK(contains(j.at("similarities"), "gamma_p3_sqrt3"));

  r = run_cli("catalog show --name gamma_p3_sqrt3");
  REQUIRE(r.exit_code == 0);
  j = json::parse(r.out);
  CHECK(j.at("multiplier") == "3");
  CHECK(j.at("matrix").size() == 8);

  r = run_cli("catalog show --name U");
  REQUIRE(r.exit_code == 0);
  j = json::parse(r.out);
  CHECK(j.at("space").at("label") == "U");
  CHECK(j.at("invariants").at("det_square_class") == "-1");
}

TEST_CASE("cli: invalid input exits 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("quad isometric --a e8m2").exit_code == 2);

  CmdResult r = run_cli("quad invariants --space nosuch");
  CHECK(r.exit_code == 2);
  CHECK(json::parse(r.out).at("error") == "UnknownName");

  r = run_cli("quad invariants --space '<1,-1'");
  CHECK(r.exit_code == 2);
  CHECK(json::parse(r.out).at("error") == "ParseError");

  r = run_cli("sim eigen --space u --matrix /nonexistent.json --d 2");
  CHECK(r.exit_code == 2);
  CHECK(json::parse(r.out).at("error") == "ParseError");
}

TEST_CASE("cli: verification battery is deterministic and schema-clean") {
  CmdResult first = run_cli("paper verify-all --samples 5 --json");
  REQUIRE(first.exit_code == 0);
  CmdResult second = run_cli("paper verify-all --samples 5 --json");
  REQUIRE(second.exit_code == 0);
  CHECK(first.out == second.out);

  json arr = json::parse(first.out);
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 12);

  json schema = json::parse(std::ifstream(KSIM_SCHEMA_PATH), nullptr, true);
  const json& def = schema.at("definitions").at("report");
  const json& required = def.at("required");
  const json& properties = def.at("properties");
  for (const json& rep : arr) {
    INFO(rep.dump());
    CHECK(rep.at("pass") == true);
    for (const auto& key : required) CHECK(rep.contains(key.get<std::string>()));
    for (auto it = rep.begin(); it != rep.end(); ++it)
      CHECK(properties.contains(it.key()));
    CHECK(rep.at("check").is_string());
    CHECK(rep.at("pass").is_boolean());
    CHECK(hex16(rep.at("digest").get<std::string>()));
  }
}

TEST_CASE("cli: verification battery human output") {
  CmdResult r = run_cli("paper verify-all --samples 5");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("01_p2_matrices") != std::string::npos);
  CHECK(r.out.find("12_random_oracles") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  const std::string tail = "12/12 checks passed\n";
  REQUIRE(r.out.size() >= tail.size());
  CHECK(r.out.compare(r.out.size() - tail.size(), tail.size(), tail) == 0);

  r = run_cli("paper verify-all --samples 5 --timing");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find(" ms") != std::string::npos);
}
