#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "doctest.h"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(HOPFQ_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool has(const Run& r, const std::string& s) { return r.out.find(s) != std::string::npos; }

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "hopfq_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("check") {
  auto r = run("check --example double:C2 --all");
  CHECK(r.code == 0);
  CHECK(has(r, "result   : PASS"));
  CHECK(run("check " + (scratch() / "missing.json").string()).code == 2);
  CHECK(run("check --example nothing:C2").code == 2);
  CHECK(run("check --example dual:S3").code == 2);
  CHECK(run("check").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("a perturbed antipode fails the Hopf check") {
  auto dir = scratch();
  auto path = (dir / "broken.json").string();
  // kC2 with S = 0 on g.
  std::ofstream(path) << R"({"field": "Q", "hopf": {"dim": 2, "basis": ["e", "g"],
    "mult": [[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,0,1]], "unit": [[0,1]],
    "comult": [[0,0,0,1],[1,1,1,1]], "counit": [[0,1],[1,1]], "antipode": [[0,0,1]]}})";
  auto r = run("check " + path + " --hopf");
  CHECK(r.code == 1);
  CHECK(has(r, "antipode identity fails at basis index"));
  CHECK(run("check " + path + " --rmatrix").code == 2);
}

TEST_CASE("factorizable") {
  auto r = run("factorizable --example reflective-trivial:C2 --level comodule");
  CHECK(r.code == 0);
  CHECK(has(r, "rank 4 / dim 4: FACTORIZABLE"));
  r = run("factorizable --example subgroup:S3:C2 --level comodule");
  CHECK(r.code == 0);
  CHECK(has(r, "rank 1 / dim 6: NOT factorizable"));
  r = run("factorizable --example regular:C2 --level weak");
  CHECK(r.code == 0);
  CHECK(has(r, "source dim 2, target dim 2, rank 1: NOT weakly factorizable"));
  r = run("factorizable --example double:C3 --level hopf");
  CHECK(has(r, "rank 9 / dim 9: FACTORIZABLE"));
  CHECK(run("factorizable --example double:C2 --level nope").code == 2);
}

TEST_CASE("simple") {
  auto r = run("simple --example reflective-trivial:C2");
  CHECK(r.code == 0);
  CHECK(has(r, "verdict     : Simple"));
  r = run("simple --example trivial-coaction:C2");
  CHECK(r.code == 0);
  CHECK(has(r, "NotSimple"));
  CHECK(has(r, "witness 0   : (1)e + (-1)g"));
  CHECK(has(run("simple --example subgroup:S3:C3"), ": Simple"));
}

TEST_CASE("construct round trips and reports are deterministic") {
  auto dir = scratch();
  auto d = (dir / "d_s3.json").string();
  auto r = run("construct --kind double --group S3 --field gf:101 --out " + d);
  CHECK(r.code == 0);
  CHECK(has(r, "dim H   : 36"));
  auto c = run("check " + d);
  CHECK(c.code == 0);
  CHECK(has(c, "GF(101)"));
  CHECK(run("check " + d + " --field q").code == 2);

  auto rc = (dir / "r_c3.json").string();
  CHECK(run("construct --kind reflective --group C3 --out " + rc).code == 0);
  auto first = run("factorizable " + rc + " --level weak --json");
  CHECK(first.code == 0);
  CHECK(has(first, "\"weakly factorizable\": \"true\""));
  CHECK(run("factorizable " + rc + " --level weak --json").out == first.out);

  for (auto* kind : {"group --group S3", "dual --group C2", "sweedler --lambda 1"}) {
    CAPTURE(kind);
    auto p = (dir / "k.json").string();
    CHECK(run(std::string("construct --kind ") + kind + " --out " + p).code == 0);
    CHECK(run("check " + p + " --all").code == 0);
  }
  CHECK(run("construct --kind double").code == 2);
  CHECK(run("construct --kind cube --group C2").code == 2);
  CHECK(run("construct --example regular:C2").out == run("construct --kind group --group C2").out);
}
