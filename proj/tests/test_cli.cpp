#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "mfmod2/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = mfmod2::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli examples") {
  auto r = run({"hecke", "on-basis", "-p", "3", "-k", "47"});
  CHECK(r.code == 0);
  CHECK(r.out == "D[21]\n");

  r = run({"structure", "express", "-p", "7", "-M", "6"});
  CHECK(r.code == 0);
  CHECK(r.out == "r = Y; t = 0\n");

  r = run({"verify", "identities", "--prec", "10000"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("PASS forms.identities", 0) == 0);
}

TEST_CASE("cli subcommands") {
  CHECK(run({"hecke", "apply", "-p", "3", "D[47,69]"}).out == "D[21,23,47,63]\n");
  CHECK(run({"--format", "json", "hecke", "on-basis", "-p", "11", "-k", "93"}).out ==
        "{\"family\":\"D\",\"indices\":[47,87]}\n");
  CHECK(run({"series", "gen", "F", "--prec", "64"}).out == "prec=64; exps=1,9,25,49\n");
  CHECK(run({"series", "gen", "D11", "--prec", "64"}).out == "prec=64; exps=11,19,59\n");
  CHECK(run({"series", "op", "add", "F", "D", "--prec", "100"}).out == "prec=100; exps=25\n");
  CHECK(run({"series", "op", "subst", "F", "--power", "5", "--prec", "64"}).out ==
        run({"series", "gen", "G", "--prec", "320"}).out);
  CHECK(run({"series", "op", "tp", "-p", "3", "D", "--prec", "300"}).out == "prec=100; exps=\n");
  CHECK(run({"series", "op", "project", "--projection", "pb", "prec=20; exps=1,11,13", "--prec", "64"}).out ==
        "prec=20; exps=11,13\n");
  CHECK(run({"decompose", "D[3,47]", "--prec", "400"}).out == "D[3,47]\n");
  CHECK(run({"code", "pair2k", "0", "2"}).out == "41\n");
  CHECK(run({"code", "k2pair", "41"}).out == "(0,2)\n");
  CHECK(run({"--format", "json", "code", "k2pair", "41"}).out == "{\"a\":0,\"b\":2,\"k\":41}\n");
  CHECK(run({"ideals", "di-basis", "--q", "2"}).out ==
        "alpha_0 = D[1]\nalpha_1 = D[7,23,47]\nalpha_2 = D[41]\nalpha_3 = D[23,47]\n");
  CHECK(run({"ideals", "theta", "-i", "2", "--q", "1"}).out == "D[41]\n");
  CHECK(run({"structure", "kernel", "--q", "1"}).out == "D[1]\nD[7]\n");
  CHECK(run({"structure", "lambda", "--depth", "6"}).out == "lambda = X + Y mod deg 3\n");

  const auto norm = nlohmann::json::parse(run({"--format", "json", "ideals", "norm", "7"}).out);
  CHECK(norm.size() == 2);
  CHECK(norm[0]["sector"] == "nonprincipal");

  const auto adapted = run({"structure", "adapted", "--depth", "2"});
  CHECK(adapted.out == "m(0,0) = D[1]\nm(1,0) = D[3]\nm(0,1) = D[7]\n");
}

TEST_CASE("cli is deterministic") {
  const std::vector<std::string> args{"--format", "json", "structure", "express", "-p", "13", "-M", "4"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["through_t11"] == true);
  CHECK(j["p"] == 13);
}

TEST_CASE("cli exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"hecke", "on-basis", "-p", "3"}).code == 2);
  CHECK(run({"hecke", "on-basis", "-p", "4", "-k", "3"}).code == 2);
  CHECK(run({"hecke", "on-basis", "-p", "3", "-k", "5"}).code == 2);
  CHECK(run({"--q", "3", "ideals", "di-basis"}).code == 2);
  CHECK(run({"--prec", "10", "series", "gen", "F"}).code == 2);
  CHECK(run({"--format", "xml", "code", "k2pair", "1"}).code == 2);
  CHECK(run({"series", "gen", "Q"}).code == 2);
  CHECK(run({"verify", "all", "--only", "no.such.check"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  // mathematical failures: F is not in W, and a window too small to certify
  auto r = run({"decompose", "F", "--prec", "200"});
  CHECK(r.code == 1);
  CHECK(r.err.find("25") != std::string::npos);
  CHECK(run({"decompose", "D47", "--prec", "90"}).code == 1);
}

TEST_CASE("verify reports per item") {
  const auto r = run({"verify", "all", "--only", "tables.t3", "--only", "code.round-trip"});
  CHECK(r.code == 0);
  CHECK(r.out == "PASS tables.t3: 16 values\nPASS code.round-trip: a, b < 64\n");
  const auto j = run({"--format", "json", "verify", "tables"});
  const auto report = nlohmann::json::parse(j.out);
  CHECK(report.size() == 3);
  CHECK(report[0]["id"] == "tables.t3");
}
