#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result run(const std::string& args) {
  static int counter = 0;
  const std::string err_path = "cli_test_stderr_" + std::to_string(++counter) + ".txt";
  const std::string cmd = std::string(FA_CLI_PATH) + " " + args + " 2>" + err_path;
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_path);
  std::remove(err_path.c_str());
  return r;
}

std::string strip_comments(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out += line + "\n";
  }
  return out;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("analytic witness") {
    const Result r = run("analytic --scheme witness --m 11 --t 6 --c 5 --kw 4 --bigk 0");
    CHECK(r.code == 0);
    CHECK(r.out.find("witness,11,6,5,0,0,1,4,0,overhead,109.090909091,,,,1200/11") != std::string::npos);
    CHECK(r.out.find("# command: fusionassure analytic") != std::string::npos);
  }

  TEST_CASE("analytic vr with no adversary and free agree votes") {
    const Result r = run("analytic --scheme vr --m 11 --t 5 --c 0 --pf 0 --k 0 --kprime 1");
    CHECK(r.code == 0);
    CHECK(r.out.find(",overhead,0,,,,0\n") != std::string::npos);
  }

  TEST_CASE("library errors exit 3 with the error name") {
    Result r = run("analytic --scheme vr --m 11 --t 5 --c 2 --pf 0.5");
    CHECK(r.code == 3);
    CHECK(r.err.find("UnsupportedPf") != std::string::npos);
    r = run("analytic --scheme witness --m 11 --t 0 --c 2");
    CHECK(r.code == 3);
    CHECK(r.err.find("InvalidThreshold") != std::string::npos);
  }

  TEST_CASE("flag errors exit 2") {
    CHECK(run("analytic --scheme vr --m 11").code == 2);
    CHECK(run("analytic --scheme bogus --m 11 --t 5 --c 2").code == 2);
    CHECK(run("analytic --scheme or --m 11 --t 5 --c 2").code == 2);
    CHECK(run("simulate --scheme vr --m 11 --t 5 --c 2 --trials 0").code == 2);
    CHECK(run("simulate --scheme vr --m eleven --t 5 --c 2").code == 2);
    CHECK(run("sweep --m 11 --t 5 --c-range 1-3").code == 2);
    CHECK(run("sweep --m 11 --t 5 --metric speed --c-range 1..2").code == 2);
    CHECK(run("table 3").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("").code == 2);
  }

  TEST_CASE("simulate is byte-identical per seed") {
    const std::string args = "simulate --scheme vr --m 11 --t 5 --c 2 --pf 0.25 --trials 2000 --seed 7";
    const Result a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find(",2000,7,") != std::string::npos);
    const Result c = run("simulate --scheme vr --m 11 --t 5 --c 2 --pf 0.25 --trials 2000 --seed 8");
    CHECK(strip_comments(a.out) != strip_comments(c.out));
  }

  TEST_CASE("one trial with one thread or many") {
    const Result a = run("simulate --scheme or --m 11 --t 5 --c 3 --pf 0.5 --bigk 48 --trials 300 --threads 1");
    const Result b = run("simulate --scheme or --m 11 --t 5 --c 3 --pf 0.5 --bigk 48 --trials 300 --threads 3");
    CHECK(strip_comments(a.out) == strip_comments(b.out));
  }

  TEST_CASE("empty c-range gives a header-only CSV") {
    const Result r = run("sweep --m 11 --t 5 --c-range \"\"");
    CHECK(r.code == 0);
    CHECK(strip_comments(r.out) == "scheme,M,T,C,pf,k,kprime,kw,bigk,metric,value,stderr,trials,seed,exact_fraction\n");
  }

  TEST_CASE("sweep with metric filter") {
    const Result r = run("sweep --m 11 --t 10 --c-range 4..5 --metric polling_delay --scheme-list witness,vr --pf-list 0,1");
    CHECK(r.code == 0);
    const std::string body = strip_comments(r.out);
    CHECK(body.find("vr,11,10,4,0,0,1,4,0,polling_delay,1.76363636364,,,,97/55") != std::string::npos);
    CHECK(body.find("witness,11,10,5,0,0,1,4,0,polling_delay,10,,,,10") != std::string::npos);
  }

  TEST_CASE("config file supplies flags and command line overrides") {
    const std::string path = "cli_test_config.json";
    {
      std::ofstream f(path);
      f << R"({"scheme": "witness", "m": 11, "t": 6, "c": 5, "kw": 4, "bigk": 0})";
    }
    Result r = run("analytic --config " + path);
    CHECK(r.code == 0);
    CHECK(r.out.find("1200/11") != std::string::npos);
    r = run("analytic --config " + path + " --kw 3");
    CHECK(r.code == 0);
    CHECK(r.out.find("witness,11,6,5,0,0,1,3,0,overhead") != std::string::npos);
    {
      std::ofstream f(path);
      f << R"({"nope": 1})";
    }
    CHECK(run("analytic --config " + path + " --scheme vr --m 5 --t 2 --c 1").code == 2);
    {
      std::ofstream f(path);
      f << "[1,2]";
    }
    CHECK(run("analytic --config " + path).code == 2);
    std::remove(path.c_str());
    CHECK(run("analytic --config missing_file.json").code == 2);
  }

  TEST_CASE("help exits cleanly") { CHECK(run("--help").code == 0); }
}
