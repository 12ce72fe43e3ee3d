#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the command-line surface: output schemas and exit
// codes.  The binary path comes from the build system.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string out_path = "cli_stdout.tmp";
  std::string cmd = std::string(NILSEQ_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::remove(out_path.c_str());
  return r;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("kappa prints re,im") {
  RunResult r = run("kappa --s 0 --t 0");
  CHECK(r.exit_code == 0);
  CHECK(r.out.substr(0, 12) == "1.0864348112");
  CHECK(r.out.find(',') != std::string::npos);
}

TEST_CASE("eval emits the stable CSV header") {
  write_file("cli_expr.json", R"({"schema":"nilseq/1","expr":{"exp":"1/2"}})");
  RunResult r = run("eval --expr cli_expr.json --from 0 --to 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("n,re,im\n0,1,0\n1,-1,", 0) == 0);
  std::remove("cli_expr.json");
}

TEST_CASE("orbit emits the stable CSV header") {
  RunResult r = run("orbit --system affine --alpha xi1 --beta 1/4 --n 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("n,re,im\n", 0) == 0);
}

TEST_CASE("avg reports value, n_used, error_estimate") {
  write_file("cli_expr.json", R"({"schema":"nilseq/1","expr":{"exp":"1/2"}})");
  RunResult r = run("avg --expr cli_expr.json --n 1000 --workers 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"schema\": \"nilseq/1\"") != std::string::npos);
  CHECK(r.out.find("\"n_used\": 1000") != std::string::npos);
  CHECK(r.out.find("error_estimate") != std::string::npos);
  std::remove("cli_expr.json");
}

TEST_CASE("classify exit codes: verified 0, refuted 1, exhausted 3") {
  write_file("cli_p.json",
             R"({"schema":"nilseq/1","t":{"const":"0","coeffs":{"xi2":"1/2"}},)"
             R"("pairs":[["xi1","xi2"]]})");
  write_file("cli_pp.json", R"({"schema":"nilseq/1","t":"0","pairs":[["1/2+xi1","xi2"]]})");
  write_file("cli_w.json",
             R"({"schema":"nilseq/1","m":2,"k":[1],"l":[0],"Q":[["1","0"],["0","1"]]})");
  write_file("cli_far.json", R"({"schema":"nilseq/1","t":"0","pairs":[["xi3","xi4"]]})");

  CHECK(run("classify verify --p cli_p.json --pprime cli_pp.json --witness cli_w.json")
            .exit_code == 0);

  write_file("cli_wbad.json",
             R"({"schema":"nilseq/1","m":4,"k":[1],"l":[0],"Q":[["1","0"],["0","1"]]})");
  CHECK(run("classify verify --p cli_p.json --pprime cli_pp.json --witness cli_wbad.json")
            .exit_code == 1);

  CHECK(run("classify search --p cli_p.json --pprime cli_far.json").exit_code == 3);

  for (const char* f : {"cli_p.json", "cli_pp.json", "cli_w.json", "cli_far.json",
                        "cli_wbad.json"})
    std::remove(f);
}

TEST_CASE("bad input exits 2") {
  CHECK(run("eval --expr does_not_exist.json --to 3").exit_code == 2);
  CHECK(run("kappa --s 0 --t 0 --tol 0.5").exit_code == 2);
  CHECK(run("nonsense").exit_code == 2);
}
