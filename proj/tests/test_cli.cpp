#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "bell/catalog.hpp"
#include "bell/text_format.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run bell_cli(const std::string& args) {
  const std::string cmd = std::string(BELL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_tmp(const std::string& name, const bell::BellFunctional& f) {
  const std::string path = "/tmp/bell_cli_test_" + name;
  std::ofstream(path) << bell::serialize_functional(f);
  return path;
}

} // namespace

TEST_CASE("bound") {
  const auto r = bell_cli("bound --name CHSH");
  CHECK(r.code == 0);
  CHECK(r.out == "0\n");
  CHECK(bell_cli("bound --name I4422_7").out == "1\n");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(bell_cli("bound --name nope").code == 2);
  CHECK(bell_cli("bound --bogus").code == 2);
  CHECK(bell_cli("frobnicate").code == 2);
  CHECK(bell_cli("").code == 2);
  CHECK(bell_cli("bound").code == 2);
  CHECK(bell_cli("bound --file /nonexistent.bell").code == 2);
  CHECK(bell_cli("noise --name CHSH --theta 0.4").code == 2);
  CHECK(bell_cli("bound --name CHSH --format xml").code == 2);
  CHECK(bell_cli("--help").code == 0);
}

TEST_CASE("equivalence of files") {
  const auto a = write_tmp("a.bell", bell::catalog_get("I3322").functional);
  const auto b = write_tmp("b.bell", bell::catalog_get("I3322_TILDE").functional);
  const auto r = bell_cli("equiv --file " + a + " --file " + b);
  CHECK(r.code == 0);
  CHECK(r.out == "equivalent\n");

  const auto n = bell_cli("equiv --name I4422_1 --name I4422_2");
  CHECK(n.code == 1);
  CHECK(n.out == "not equivalent\n");
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("facet, canon and symmetric") {
  const auto f = bell_cli("facet --name I3322 --format json");
  CHECK(f.code == 0);
  const auto j = nlohmann::json::parse(f.out);
  CHECK(j["is_tight"] == true);
  CHECK(j["affine_dim"] == 14);

  const auto c = bell_cli("canon --name I3322 --format json");
  const auto t = bell_cli("canon --name I3322_TILDE --format json");
  CHECK(c.code == 0);
  CHECK(c.out == t.out);
  CHECK(bell::functional_from_json(nlohmann::json::parse(c.out)).scenario == bell::Scenario(3, 3));

  CHECK(bell_cli("symmetric --name I4422_2").code == 1);
  CHECK(bell_cli("symmetric --name CHSH").code == 0);
  CHECK(bell_cli("symmetric --name I4322_1").code == 2);
}

TEST_CASE("catalog output round-trips through the json schema") {
  const auto r = bell_cli("catalog --format json");
  CHECK(r.code == 0);
  const auto arr = nlohmann::json::parse(r.out);
  REQUIRE(arr.size() == bell::catalog_list().size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    CHECK(bell::functional_from_json(arr[i]) == bell::catalog_list()[i].functional);

  const auto one = bell_cli("catalog --name AS2");
  CHECK(one.out.find("bell 4 4 0") != std::string::npos);
}

TEST_CASE("quantum commands") {
  const auto q = bell_cli("qmax --name CHSH --restarts 10 --seed 1 --format json");
  CHECK(q.code == 0);
  const auto j = nlohmann::json::parse(q.out);
  CHECK(std::abs(j["value"].get<double>() - (1 / std::sqrt(2.0) - 0.5)) < 1e-6);
  CHECK(j["model"]["alice"].size() == 2);

  CHECK(bell_cli("qmax --name I4422_4 --theta 0.25 --restarts 10").code == 1);
  CHECK(bell_cli("qmax --name I4422_4 --theta 0.25 --restarts 10 --degenerate").code == 0);

  const auto w = bell_cli("noise --name I3322 --restarts 10 --format json");
  CHECK(w.code == 0);
  CHECK(std::abs(nlohmann::json::parse(w.out)["w"].get<double>() - 0.8) < 1e-9);
  CHECK(bell_cli("noise --name I4422_4 --restarts 10").code == 1);

  const auto e = bell_cli("eta --name CHSH --restarts 10 --format json");
  CHECK(e.code == 0);
  CHECK(std::abs(nlohmann::json::parse(e.out)["eta"].get<double>() - 2 / (std::sqrt(2.0) + 1)) < 2e-5);

  const auto a = bell_cli("eta-asym --name CHSH --theta 0.25 --restarts 10 --format csv");
  CHECK(a.code == 0);
  CHECK(a.out.rfind("theta_over_pi,eta_b\n0.250000,0.7071", 0) == 0);
}

TEST_CASE("search command") {
  const auto r = bell_cli("search --ma 3 --mb 3 --corr-min -1 --corr-max 1 --marg-min -2 --mode exhaustive --format json");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["facets_found"].size() == 2);
  CHECK(j["new_count"] == 0);
  CHECK(bell_cli("search --mode exhaustive").code == 2); // over the cap
}

TEST_CASE("jobs flag does not change results") {
  const auto a = bell_cli("qmax --name A5 --restarts 8 --seed 3 --jobs 1");
  const auto b = bell_cli("qmax --name A5 --restarts 8 --seed 3 --jobs 4");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}
