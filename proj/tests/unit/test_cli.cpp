#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

#include "corpus.hpp"
#include "golden.hpp"
#include "grpd/cli.hpp"
#include "grpd/io.hpp"

namespace {

struct Result {
  int exit;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = grpd::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

int binary(const std::string& args) {
  const auto cmd = std::string(GRPD_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("golden transcripts") {
  const auto cases = golden::load_cases();
  CHECK(cases.size() >= 40);
  for (const auto& c : cases) {
    const auto v = golden::check(c);
    CHECK_MESSAGE(v.ok, c.name << ": " << v.problem);
  }
}

TEST_CASE("reconstruct reports as JSON") {
  const auto r = cli({"groupoid", "reconstruct", corpus::fixture_path("r2.json"), "--ring", "f2"});
  REQUIRE(r.exit == grpd::kExitOk);
  const auto j = grpd::io::Json::parse(r.out);
  CHECK(j["status"] == "iso found");
  CHECK(j["classes"] == 7);
  CHECK(j["germ_count"] == 4);
  CHECK(r.err.empty());

  const auto bad = cli({"groupoid", "reconstruct", corpus::fixture_path("z2-trivial-grading.json")});
  CHECK(bad.exit == grpd::kExitCheckFailed);
  const auto jb = grpd::io::Json::parse(bad.out);
  CHECK(jb["status"] == "hypothesis violated");
  CHECK(bad.err.find("kernel not principal") != std::string::npos);
}

TEST_CASE("graph compare verdicts") {
  const auto ob = cli({"graph", "compare", corpus::fixture_path("e2.json"), corpus::fixture_path("e2minus.json")});
  CHECK(ob.exit == grpd::kExitOk);
  CHECK(grpd::io::Json::parse(ob.out)["verdict"] == "OBSTRUCTED");
  const auto same = cli({"graph", "compare", corpus::fixture_path("e2.json"), corpus::fixture_path("e2.json")});
  CHECK(grpd::io::Json::parse(same.out)["verdict"] == "NO OBSTRUCTION FOUND");
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({}).exit == grpd::kExitInputError);
  CHECK(cli({"groupoid"}).exit == grpd::kExitInputError);
  CHECK(cli({"lpa", "eval", corpus::fixture_path("e2.json"), "s(e) t(f"}).exit == grpd::kExitInputError);
  CHECK(cli({"graph", "invariants", corpus::fixture_path("malformed.json")}).exit == grpd::kExitInputError);
}

TEST_CASE("the installed binary uses the same exit codes") {
  const auto f = corpus::fixture_path("");
  CHECK(binary("groupoid validate " + f + "r2.json") == 0);
  CHECK(binary("groupoid reconstruct " + f + "z2-trivial-grading.json") == 1);
  CHECK(binary("groupoid validate " + f + "broken-inverse.json") == 1);
  CHECK(binary("graph invariants " + f + "malformed.json") == 2);
  CHECK(binary("lpa bridge-check " + f + "e2.json") == 2);
  CHECK(binary("--help") == 0);
}
