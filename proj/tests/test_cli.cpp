#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "support.hpp"

using namespace ell;
using ell::test::Ctx;

namespace {

namespace fs = std::filesystem;

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI with the given arguments; stderr is appended when wanted.
Run ell_cli(const std::string& args, bool with_stderr = false) {
  const std::string cmd = std::string(ELL_CLI) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string model(const std::string& name) { return std::string(ELL_MODELS) + "/" + name; }

std::string scratch(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "ell_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

// Last non-comment line of the output.
std::string result_line(const std::string& out) {
  std::string last;
  std::size_t pos = 0;
  while (pos < out.size()) {
    const std::size_t end = out.find('\n', pos);
    const std::string line = out.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    if (!line.empty() && line[0] != '#') last = line;
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return last;
}

}  // namespace

TEST_CASE("solve prints the combined triangle form") {
  const Run r = ell_cli("solve " + model("triangle.txt") + " --combine");
  CHECK(r.status == 0);
  Ctx c{"x1", "x2", "x3"};
  CHECK(erat_equal(c.E(result_line(r.out)), c.E("(1+x1*x2*x3)/((1-x1*x3)*(1-x1*x2)*(1-x2*x3))")));
}

TEST_CASE("builtin k-gon") {
  const Run r = ell_cli("builtin kgon 3 --combine");
  CHECK(r.status == 0);
  CHECK(result_line(r.out) == "q^3/((1-q^2)*(1-q^3)*(1-q^4))");
}

TEST_CASE("check agrees with enumeration") {
  const Run r = ell_cli("check " + model("putnam_321.txt") + " --series-check 6");
  CHECK(r.status == 0);
  CHECK(r.out.find("series check to degree 6: ok") != std::string::npos);

  CHECK(ell_cli("check " + model("two_a_three_b.txt") + " --series-check 8").status == 0);
  CHECK(ell_cli("builtin magic 3 --series-check 5").status == 0);
}

TEST_CASE("eliminate an expression") {
  const Run r = ell_cli("eliminate " + model("crude.txt") + " --combine");
  CHECK(r.status == 0);
  Ctx c{"x", "y"};
  CHECK(erat_equal(c.E(result_line(r.out)), c.E("(1+x^2*y)/((1-x^3*y^2)*(1-x))")));
}

TEST_CASE("flags") {
  const std::string tri = model("triangle.txt");
  const Run plain = ell_cli("solve " + tri);
  CHECK(plain.out.rfind("# ", 0) == 0);

  Ctx c{"x1", "x2", "x3"};
  const ERat expected = c.E("(1+x1*x2*x3)/((1-x1*x3)*(1-x1*x2)*(1-x2*x3))");
  for (const char* flags : {"--elim-order l2,l3,l1", "--elim-order auto", "--strategy direct", "--strategy complement",
                            "--order x3,x1,x2"}) {
    const Run r = ell_cli("solve " + tri + " --combine " + flags);
    CHECK_MESSAGE(r.status == 0, flags);
    CHECK_MESSAGE(erat_equal(c.E(result_line(r.out)), expected), flags);
  }

  const Run timed = ell_cli("solve " + tri + " --time", true);
  CHECK(timed.out.find("triangle,") != std::string::npos);

  const Run counted = ell_cli("builtin zeilberger 3 --combine --terms");
  CHECK(counted.status == 0);
  CHECK(result_line(counted.out) == "2");

  CHECK(ell_cli("solve " + tri + " --strategy sideways").status == 1);
  CHECK(ell_cli("solve " + tri + " --elim-order l1,l2").status == 1);
  CHECK(ell_cli("builtin kgon 2").status == 1);
  CHECK(ell_cli("solve /nonexistent/file.txt").status == 1);
}

TEST_CASE("exit codes per error class") {
  CHECK(ell_cli("solve " + scratch("syntax.txt", "vars x;\na >= 0 0;\n")).status == 2);
  CHECK(ell_cli("eliminate " + scratch("trinomial.txt", "vars x y;\nexpr: 1/(1-x-y);\n")).status == 3);
  CHECK(ell_cli("eliminate " + scratch("divergent.txt", "vars x;\nomegavars l;\nexpr: 1/((1-l)*(1-x));\n")).status == 4);
  // with x = 2 the closed form is a number while the count is 1 + 2 + 4 + 8
  const Run r = ell_cli("check " + scratch("numeric.txt", "vars x;\na >= 0;\nsubst x = 2;\n") + " --series-check 3");
  CHECK(r.status == 5);
  CHECK(r.out.find("MISMATCH") != std::string::npos);
}

TEST_CASE("output is deterministic and reads back in") {
  for (const char* args : {"builtin kgon_unordered 4", "builtin putnam 3 2 1", "builtin magic 3"}) {
    const Run a = ell_cli(args);
    const Run b = ell_cli(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
  }

  const Run tri = ell_cli("solve " + model("triangle.txt"));
  const std::string back = scratch("back.txt", "vars x1 x2 x3;\nexpr: " + result_line(tri.out) + ";\n");
  const Run again = ell_cli("eliminate " + back + " --combine");
  CHECK(again.status == 0);
  Ctx c{"x1", "x2", "x3"};
  CHECK(erat_equal(c.E(result_line(again.out)), c.E("(1+x1*x2*x3)/((1-x1*x3)*(1-x1*x2)*(1-x2*x3))")));
}
