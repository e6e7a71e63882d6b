#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef URLLC_CLI_PATH
#define URLLC_CLI_PATH "urllc-lab"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(URLLC_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.stdout_text.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("unknown flag exits 1") {
  const RunResult r = run_cli("delay-ccdf --does-not-exist 1");
  CHECK(r.exit_code == 1);
}

TEST_CASE("stability violation exits 2") {
  const RunResult r = run_cli("delay-ccdf --n 10 --eps 0.5 --lambda 0.2 --dmax 5");
  CHECK(r.exit_code == 2);
}

TEST_CASE("delay-ccdf emits the documented columns and valid probabilities") {
  const RunResult r =
      run_cli("delay-ccdf --n 10 --eps 0.5 --lambda 0.01 --dmax 15 --method both");
  REQUIRE(r.exit_code == 0);
  std::istringstream in(r.stdout_text);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("d,exact,saddlepoint", 0) == 0);
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    double d, ex, sp;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &d, &ex, &sp) == 3);
    CHECK(ex >= 0.0);
    CHECK(ex <= 1.0);
    CHECK(sp >= 0.0);
    CHECK(sp <= 1.0);
    ++rows;
  }
  CHECK(rows == 15);
}

TEST_CASE("byte-identical output across repeated runs and worker counts") {
  const std::string cmd = "rcus --n 30 --k 10 --snr-db 0 --samples 40000 --seed 123";
  const RunResult a = run_cli(cmd, "URLLC_LAB_THREADS=1");
  const RunResult b = run_cli(cmd, "URLLC_LAB_THREADS=4");
  const RunResult c = run_cli(cmd);
  REQUIRE(a.exit_code == 0);
  CHECK(a.stdout_text == b.stdout_text);
  CHECK(a.stdout_text == c.stdout_text);

  const std::string sim = "simulate --model fcfs --n 10 --lambda 0.01 --eps 0.5 --num 20000 "
                          "--seed 5 --grid-max 20";
  const RunResult s1 = run_cli(sim, "URLLC_LAB_THREADS=1");
  const RunResult s2 = run_cli(sim, "URLLC_LAB_THREADS=4");
  CHECK(s1.stdout_text == s2.stdout_text);
}

TEST_CASE("json config with command-line override") {
  const std::string path = "/tmp/urllc_test_config.json";
  {
    std::ofstream cfg(path);
    cfg << R"({"n": 10, "eps": 0.5, "lambda": 0.01, "dmax": 5, "method": "exact"})";
  }
  const RunResult base = run_cli("delay-ccdf --config " + path);
  REQUIRE(base.exit_code == 0);
  const RunResult direct =
      run_cli("delay-ccdf --n 10 --eps 0.5 --lambda 0.01 --dmax 5 --method exact");
  CHECK(base.stdout_text == direct.stdout_text);
  // override dmax on the command line
  const RunResult over = run_cli("delay-ccdf --config " + path + " --dmax 3");
  const RunResult direct3 =
      run_cli("delay-ccdf --n 10 --eps 0.5 --lambda 0.01 --dmax 3 --method exact");
  CHECK(over.stdout_text == direct3.stdout_text);
  std::remove(path.c_str());
}

TEST_CASE("high-rate-limit and age commands run end to end") {
  const RunResult hrl = run_cli("high-rate-limit --policy all --eps 0.3 --a0 100 --n 10");
  REQUIRE(hrl.exit_code == 0);
  CHECK(hrl.stdout_text.find("lcfs-s") != std::string::npos);

  const RunResult av =
      run_cli("age-violation --policy ktl --n 10 --lambda 0.02 --eps 0.3 --a0 200 --method exact");
  REQUIRE(av.exit_code == 0);

  const RunResult vb = run_cli(
      "vlsf-bound --n 10 --k 10 --snr-db 0 --gamma 6 --ell-max 6 --samples 5000 --seed 3");
  REQUIRE(vb.exit_code == 0);
  CHECK(vb.stdout_text.find("tau_tail") != std::string::npos);
}

TEST_CASE("snc-bound and delay-violation run with a provided eps") {
  const RunResult snc = run_cli("snc-bound --n 100 --eps 0.05 --lambda 1e-3 --d0 500");
  REQUIRE(snc.exit_code == 0);
  const RunResult dv = run_cli(
      "delay-violation --n 100 --eps 0.05 --lambda 1e-3 --d0 500 --method saddlepoint");
  REQUIRE(dv.exit_code == 0);
}

}  // TEST_SUITE
