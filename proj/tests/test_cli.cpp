#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "hw/cli.hpp"

using namespace hw;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

nlohmann::json json_of(std::vector<std::string> args) {
  const auto r = run(std::move(args));
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("cli examples") {
  auto wg = json_of({"wg", "--cycle-type", "2", "--symbolic"});
  CHECK(wg == nlohmann::json::parse(R"({"num":[-1],"den":[0,-1,0,1]})"));

  auto word = json_of({"word", "U1 V1 U1* V1*", "--symbolic"});
  CHECK(word["value"] == "d^-2");

  auto iz = json_of({"iz-limit", "--q", "2", "--centered"});
  CHECK(iz == nlohmann::json::parse(R"({"terms":[{"coeff":"1","x":[2],"y":[2]}]})"));

  auto at = json_of({"wg", "--cycle-type", "2,1", "--d", "3"});
  CHECK(at["value"] == "-1/40");
  CHECK(at["cycle_type"] == nlohmann::json::array({2, 1}));

  CHECK(json_of({"integrate", "--i", "1,1", "--j", "1,1", "--ip", "1,1", "--jp", "1,1", "--d", "2"})["value"] == "1/3");
  CHECK(json_of({"word", "U A U* B", "--d", "2", "--matrix", "A=1,0;0,0", "--matrix", "B=1,0;0,0"})["value"] == "1/4");
}

TEST_CASE("cli exit codes") {
  auto r = run({"wg", "--cycle-type", "3", "--d", "2"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find('\n') == r.err.size() - 1);

  CHECK(run({"wg"}).code == 2);
  CHECK(run({"wg", "--cycle-type", "2", "--bogus"}).code == 2);
  CHECK(run({"nosuch"}).code == 2);
  CHECK(run({"word", "U $"}).code == 2);
  CHECK(run({"iz-limit", "--q", "7", "--gamma", "enumeration"}).code == 1);
}

TEST_CASE("cli text output and global options") {
  auto r = run({"wg", "--cycle-type", "1,1", "--symbolic", "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out == "1/(d^2 - 1)\n");

  auto a = run({"--threads", "1", "iz-exact", "--q", "3"});
  auto b = run({"iz-exact", "--q", "3", "--threads", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("tables are stable") {
  auto a = run({"tables", "--section", "all"});
  auto b = run({"tables", "--section", "all"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto t = run({"tables", "--section", "iz", "--format", "text"});
  CHECK(t.out.find("x4*y4 - 2*x2^2*y4 - 2*x4*y2^2 + 3*x2^2*y2^2") != std::string::npos);
}
