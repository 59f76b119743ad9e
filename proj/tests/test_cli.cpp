// Shells out to the built binary: line-oriented output stability and
// byte-identical --json reruns.

#define DOCTEST_CONFIG_IMPLEMENT
#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"

namespace {

std::string g_cli;
std::string g_corpus;

std::string run(const std::string& args, int* exit_code = nullptr) {
  std::string cmd = g_cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  if (exit_code) *exit_code = WEXITSTATUS(status);
  return out;
}

}  // namespace

TEST_CASE("replay output lines are stable") {
  CHECK(run("replay " + g_corpus + "/inmortal.json") ==
        "DominoOut team A 111\n");
  CHECK(run("replay " + g_corpus + "/tranca_107.json") ==
        "Blocked team A 107 at 0\n");
  CHECK(run("replay " + g_corpus + "/tranca_minima.json") ==
        "Blocked team B 75 at 0\n");
}

TEST_CASE("exit codes: 0 ok, 1 verification failure, 2 usage") {
  int code = -1;
  run("replay " + g_corpus + "/inmortal.json", &code);
  CHECK(code == 0);
  run("replay /nonexistent.json", &code);
  CHECK(code == 1);
  run("bogus-subcommand", &code);
  CHECK(code == 2);
}

TEST_CASE("validate accepts record legality without terminality") {
  int code = -1;
  std::string out = run("validate " + g_corpus + "/inmortal.json", &code);
  CHECK(code == 0);
  CHECK(out == "valid\n");
}

TEST_CASE("json reruns are byte-identical") {
  for (std::string args :
       {std::string("--json bounds-table"),
        std::string("--json min-board-sum --k 0 --tiles 10"),
        "--json replay " + g_corpus + "/tranca_107.json",
        std::string("--json search --target 110 --threads 2"),
        std::string("--json hand-check 0 1 2 3")}) {
    std::string a = run(args);
    std::string b = run(args);
    CAPTURE(args);
    CHECK(!a.empty());
    CHECK(a == b);
  }
}

TEST_CASE("search output does not depend on the worker count") {
  std::string one = run("--json search --target 110 --threads 1");
  std::string four = run("--json search --target 110 --threads 4");
  CHECK(!one.empty());
  CHECK(one == four);
}

TEST_CASE("pruning toggles parse and leave the verdict alone") {
  int code = -1;
  std::string out = run("search --target 113 --prune p1 p2 p3 s", &code);
  CHECK(code == 0);
  CHECK(out.find("verdict=UNSAT") != std::string::npos);
}

TEST_CASE("bounds-table prints seven rows") {
  std::string out = run("bounds-table");
  int rows = 0;
  for (char c : out)
    if (c == '\n') ++rows;
  CHECK(rows == 8);  // header plus seven rows
}

TEST_CASE("hand-check") {
  CHECK(run("hand-check 0 1 2 3") == "impossible\n");
  CHECK(run("hand-check 0 1 2") == "possible\n");
}

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: test_cli <cli-binary> <corpus-dir>\n");
    return 1;
  }
  g_cli = argv[1];
  g_corpus = argv[2];
  doctest::Context ctx;
  return ctx.run();
}
