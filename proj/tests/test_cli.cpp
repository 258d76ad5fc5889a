#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#ifndef EXTIME_BIN
#error "EXTIME_BIN must point at the built executable"
#endif

namespace {

std::pair<int, std::string> run(const std::string& args) {
  std::string cmd = std::string(EXTIME_BIN) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int rc = pclose(p);
  return {WEXITSTATUS(rc), out};
}

// RFC-style CSV reader matching the emitter's quoting rules.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
    } else {
      field += c;
    }
  }
  if (!field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("commands are deterministic byte for byte") {
  const char* cmd =
      "simulate --set kind=brownian --law T --n 400 --seed 9 --dt 0.02";
  auto a = run(cmd);
  auto b = run(cmd);
  CHECK(a.first == 0);
  CHECK(a.second == b.second);
}

TEST_CASE("worker count changes neither samples nor estimates") {
  auto a = run(
      "simulate --set kind=brownian --law T --n 400 --seed 9 --workers 1");
  auto b = run(
      "simulate --set kind=brownian --law T --n 400 --seed 9 --workers 3");
  REQUIRE(a.first == 0);
  REQUIRE(b.first == 0);
  // sample block identical; the config echo records the differing flag
  auto tail = [](const std::string& s) {
    return s.substr(s.find("\nsample\n"));
  };
  CHECK(tail(a.second) == tail(b.second));
}

TEST_CASE("csv output round-trips") {
  auto r = run("phi --set kind=brownian --grid-start 0 --grid-stop 2 "
               "--grid-count 5");
  REQUIRE(r.first == 0);
  auto rows = parse_csv(r.second);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"u", "phi_minus", "phi_plus"});
  // re-emit from parsed values and compare
  std::string again;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      again += (i ? "," : "") + row[i];
    again += "\n";
  }
  CHECK(again == r.second);
  // numeric fidelity at 17 significant digits
  CHECK(std::stod(rows[2][1]) == 0.5);
  CHECK(std::stod(rows[2][2]) == 2.0);
}

TEST_CASE("json output parses and agrees with csv") {
  auto c = run("mellin --set kind=brownian --law T --grid-start 0.1 "
               "--grid-stop 0.3 --grid-count 3");
  auto j = run("mellin --set kind=brownian --law T --grid-start 0.1 "
               "--grid-stop 0.3 --grid-count 3 --format json");
  REQUIRE(c.first == 0);
  REQUIRE(j.first == 0);
  auto parsed = nlohmann::json::parse(j.second);
  auto rows = parse_csv(c.second);
  REQUIRE(parsed.size() == 3);
  CHECK(parsed[0]["re_M"].get<double>() == std::stod(rows[1][2]));
  CHECK(parsed[2]["re_M"].get<double>() == std::stod(rows[3][2]));
}

TEST_CASE("exit codes follow the contract") {
  CHECK(run("table --set kind=brownian").first == 0);
  // precondition: extinction law without a process pair
  CHECK(run("mellin --law extinction --set kind=identity").first == 2);
  // precondition: smoothness guard names the index
  auto g = run("density --law T --set kind=compound_poisson_pair "
               "--set q=0.5 --set m=1 --set theta=1 --set alpha=1");
  CHECK(g.first == 2);
  CHECK(g.second.find("density-not-available") != std::string::npos);
  CHECK(g.second.find("smoothness index") != std::string::npos);
  // parse errors are usage preconditions
  CHECK(run("density --law T --method bogus --set kind=brownian").first == 2);
  CHECK(run("nonsense").first == 2);
}

TEST_CASE("verify emits a machine-readable report") {
  auto r = run("verify --suite wphi --set kind=identity");
  CHECK(r.first == 0);
  auto rep = nlohmann::json::parse(r.second);
  CHECK(rep["pass"].get<bool>());
  CHECK(rep["suite"] == "wphi");
  REQUIRE(rep["checks"].is_array());
  REQUIRE(!rep["checks"].empty());
  for (const auto& ck : rep["checks"]) {
    CHECK(ck.contains("name"));
    CHECK(ck.contains("measured"));
    CHECK(ck.contains("tolerance"));
    CHECK(ck["pass"].get<bool>());
  }
  // membership preconditions surface as exit 2
  CHECK(run("verify --suite theorem3 --set kind=brownian").first == 2);
}

TEST_CASE("density tables match the closed form") {
  auto r = run("density --set kind=identity --set beta=1 --law frechet "
               "--grid-start 1 --grid-stop 1 --grid-count 1");
  REQUIRE(r.first == 0);
  auto rows = parse_csv(r.second);
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows[1][1]) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(rows[1][2] == "series");
}

TEST_CASE("single-point tail table") {
  auto r = run("tail --set kind=identity --set beta=1 --grid-start 200 "
               "--grid-stop 200 --grid-count 1");
  REQUIRE(r.first == 0);
  auto rows = parse_csv(r.second);
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows[1][2]) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::stod(rows[1][3]) == 1.0);
}
