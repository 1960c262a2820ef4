#include <sys/wait.h>

#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "json.hpp"
#include "revxdt/io.hpp"
#include "revxdt/oracle.hpp"

using namespace revxdt;

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result cli(const std::string& args) {
  std::string cmd = std::string(REVXDT_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string fx(const std::string& name) { return std::string(REVXDT_FIXTURES_DIR) + "/" + name + ".json"; }

std::string tmp(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "revxdt_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("check") {
  auto r = cli("check " + fx("a2"));
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["reversible"] == true);
  CHECK(j["one_way"] == false);

  CHECK(cli("check /nonexistent.json").status == 2);
  CHECK(cli("frobnicate").status == 2);
  CHECK(cli("--help").status == 0);
}

TEST_CASE("run") {
  auto r = cli("run " + fx("a2") + " --input ab");
  CHECK(r.status == 1);
  CHECK(r.out == "rejected\n");
  r = cli("run " + fx("a2") + " --input baab");
  CHECK(r.status == 0);
  CHECK(r.out == "accepted \"\"\n");
  r = cli("run " + fx("rel") + " --input ab");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"abba\"") != std::string::npos);
}

TEST_CASE("equiv and uniformcheck") {
  CHECK(cli("equiv " + fx("a1") + " " + fx("a2") + " --max-len 5").status == 0);
  auto r = cli("equiv " + fx("id") + " " + fx("mirror") + " --max-len 3");
  CHECK(r.status == 1);
  CHECK(r.out.find("differ on") != std::string::npos);
  CHECK(cli("uniformcheck " + fx("id") + " " + fx("rel") + " --max-len 4").status == 0);
  CHECK(cli("uniformcheck " + fx("mirror") + " " + fx("rel") + " --max-len 4").status == 1);
}

TEST_CASE("constructions write machines that load back") {
  auto out = tmp("mm.json");
  REQUIRE(cli("compose " + fx("mirror") + " " + fx("mirror") + " -o " + out).status == 0);
  auto mm = load_transducer(out);
  CHECK(mm.size() == 9);
  CHECK(check_equiv(mm, load_transducer(fx("id")), 5).equal);

  out = tmp("outline.json");
  REQUIRE(cli("treeoutline " + fx("t1") + " --emit-rule-tags -o " + out).status == 0);
  auto o = load_transducer(out);
  CHECK(o.size() == 90);
  CHECK_FALSE(o.transitions[0].tag.empty());

  out = tmp("rev.json");
  REQUIRE(cli("reversibilize " + fx("t1") + " --reachable -o " + out).status == 0);
  auto r = load_transducer(out);
  CHECK(check_properties(r).reversible);
  CHECK(check_equiv(r, load_transducer(fx("t1")), 4).equal);

  out = tmp("unif.json");
  REQUIRE(cli("uniformize " + fx("rel") + " -o " + out).status == 0);
  CHECK(check_uniformizes(load_transducer(out), load_transducer(fx("rel")), 4).ok);

  out = tmp("sst.json");
  REQUIRE(cli("sst2rev " + fx("sst_pal") + " --reachable -o " + out).status == 0);
  CHECK(cli("run " + out + " --input ab").out == "accepted \"abba\"\n");
  CHECK(cli("ssteval " + fx("sst_pal") + " --input abb").out == "accepted \"abbbba\"\n");
}

TEST_CASE("errors") {
  auto r = cli("treeoutline " + fx("a2"));
  CHECK(r.status == 2);
  CHECK(cli("compose " + fx("t1") + " " + fx("id")).status == 2);
  CHECK(cli("dot " + fx("t1") + " --word ab").out.find("color=red") != std::string::npos);
  auto s = nlohmann::json::parse(cli("stats " + fx("t1")).out);
  CHECK(s["states"] == 5);
}
