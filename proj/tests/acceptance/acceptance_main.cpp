// Acceptance suite: one pass/fail line per criterion; exit nonzero on failure.
// Usage: acceptance [criterion...]   (no arguments = run all)
//
// Monte Carlo comparisons use |p_hat - p| <= 3 sqrt(p(1-p)/N) + 3/N: three
// standard errors computed from the analytic probability, plus a 3-count
// Poisson slack so that deep-tail grid points (expected counts < 1) are judged
// by a tail bound rather than a vanishing normal approximation.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "urllc/age.hpp"
#include "urllc/errors.hpp"
#include "urllc/channel.hpp"
#include "urllc/queueing.hpp"
#include "urllc/saddlepoint.hpp"
#include "urllc/sim.hpp"
#include "urllc/vlsf.hpp"

namespace {

using namespace urllc;

int g_checks = 0, g_failures = 0;

void expect(bool ok, const std::string& what) {
  ++g_checks;
  if (!ok) {
    ++g_failures;
    std::printf("    FAILED: %s\n", what.c_str());
  }
}

bool mc_close(double p_hat, double p, std::uint64_t n_samples, const std::string& what) {
  const double se = std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n_samples));
  const double tol = 3.0 * se + 3.0 / static_cast<double>(n_samples);
  const bool ok = std::abs(p_hat - p) <= tol;
  expect(ok, what + " (p_hat=" + std::to_string(p_hat) + " p=" + std::to_string(p) +
                 " tol=" + std::to_string(tol) + ")");
  return ok;
}

struct GridPoint {
  int n;
  double lambda, eps;
};

std::vector<GridPoint> criterion1_grid() {
  std::vector<GridPoint> g;
  for (int n : {5, 10, 20}) {
    for (double lambda : {0.002, 0.005, 0.01}) {
      for (double eps : {0.1, 0.3, 0.5}) g.push_back({n, lambda, eps});
    }
  }
  return g;
}

// ---- criterion 1: sync delay, analytic vs discrete-event oracle ----
bool criterion1() {
  const std::uint64_t bulks = 1000000;
  const std::uint64_t warmup = default_warmup(bulks);
  std::uint64_t seed = 1000;
  for (const auto& pt : criterion1_grid()) {
    const ServiceModel s = arq_service_model(pt.eps);
    const QueueConfig q{pt.n, pt.lambda};
    const RationalPgf g = delay_pgf_sync(s, q);
    const TailCurve tails = g.invert_ccdf(29);
    const SimReport sim = simulate_fcfs_delay(s, q, bulks, warmup, seed++, 30);
    for (int d = 1; d <= 30; ++d) {
      mc_close(sim.at(d - 1), tails.at(d - 1), sim.count,
               "c1 n=" + std::to_string(pt.n) + " lambda=" + std::to_string(pt.lambda) +
                   " eps=" + std::to_string(pt.eps) + " d=" + std::to_string(d));
    }
  }
  return g_failures == 0;
}

// ---- criterion 2: async delay, analytic vs channel-use oracle ----
bool criterion2() {
  const std::uint64_t packets = 1000000;
  const std::uint64_t warmup = default_warmup(packets);
  std::uint64_t seed = 2000;
  for (const auto& pt : criterion1_grid()) {
    if (pt.n > 10) continue;
    const ServiceModel s = arq_service_model(pt.eps);
    const QueueConfig q{pt.n, pt.lambda};
    const RationalPgf g = delay_pgf_async(s, q);
    const int grid = 30 * pt.n;
    const TailCurve tails = g.invert_ccdf(grid - 1);
    const SimReport sim = simulate_async_delay(s, q, packets, warmup, seed++, grid);
    for (int k = pt.n - 1; k < grid; k += pt.n) {  // frame-aligned grid, d = 1..30 frames
      mc_close(sim.at(k), tails.at(k), sim.count,
               "c2 n=" + std::to_string(pt.n) + " lambda=" + std::to_string(pt.lambda) +
                   " eps=" + std::to_string(pt.eps) + " k=" + std::to_string(k));
    }
  }
  return g_failures == 0;
}

// ---- criterion 3: saddlepoint accuracy (10% where tail >= 1e-8) ----
bool criterion3() {
  auto check_pgf = [&](const RationalPgf& g, const std::string& label) {
    const TailCurve tails = g.invert_ccdf(39);
    for (int d = 1; d <= 40; ++d) {
      const double exact = tails.at(d - 1);
      if (exact < 1e-8) break;
      const double sp = saddlepoint_ccdf(g, d);
      expect(std::abs(sp - exact) <= 0.10 * exact,
             label + " d=" + std::to_string(d) + " exact=" + std::to_string(exact) +
                 " sp=" + std::to_string(sp));
    }
  };
  for (const auto& pt : criterion1_grid()) {
    const ServiceModel s = arq_service_model(pt.eps);
    const QueueConfig q{pt.n, pt.lambda};
    check_pgf(delay_pgf_sync(s, q), "c3 n=" + std::to_string(pt.n) +
                                        " lambda=" + std::to_string(pt.lambda) +
                                        " eps=" + std::to_string(pt.eps));
  }
  // Fig. 3 configuration: n = 100 channel uses, lambda = 1e-3, ARQ at 0 dB
  const ChannelSpec spec{1.0, 100};
  const double eps = rcus_epsilon(spec, 30, default_alpha_grid(), 100000, 3001).value;
  std::printf("    fig3 config: rcus epsilon = %.6e\n", eps);
  const ServiceModel s = arq_service_model(eps);
  const QueueConfig q{100, 1e-3};
  check_pgf(delay_pgf_sync(s, q), "c3 fig3 n=100 lambda=1e-3");
  return g_failures == 0;
}

// ---- criterion 4: SNC dominance and Fig. 4 throughput comparison ----
bool criterion4() {
  for (const auto& pt : criterion1_grid()) {
    const ServiceModel s = arq_service_model(pt.eps);
    const QueueConfig q{pt.n, pt.lambda};
    const RationalPgf g = delay_pgf_sync(s, q);
    const TailCurve tails = g.invert_ccdf(29);
    for (int d : {2, 5, 10, 20, 30}) {
      const double exact = tails.at(d - 1);
      const double bound = snc_delay_bound(pt.eps, q, d * pt.n);
      expect(bound >= exact - 1e-12, "c4 dominance n=" + std::to_string(pt.n) +
                                         " lambda=" + std::to_string(pt.lambda) +
                                         " eps=" + std::to_string(pt.eps) +
                                         " d=" + std::to_string(d));
    }
  }
  // 0 dB, d0 = 500, target 1e-3: SNC-based max throughput below the exact one.
  const int d0 = 500, k = 30;
  const double target = 1e-3;
  double best_exact = 0.0, best_snc = 0.0;
  for (int n : {50, 60, 71, 83, 91, 100, 125}) {
    const ChannelSpec spec{1.0, n};
    const double eps = rcus_epsilon(spec, k, default_alpha_grid(), 100000, 4001).value;
    const ServiceModel s = arq_service_model(eps);
    double thr_exact = 0.0;
    try {
      thr_exact = max_arrival_rate(s, n, d0, target, k).throughput;
    } catch (const InfeasibleError&) {
    }
    // SNC route: largest lambda whose SNC bound meets the target
    double lo = 0.0, hi = (1.0 - eps) / n - 1e-12;
    if (hi > 0.0 && snc_delay_bound(eps, QueueConfig{n, hi * 1e-9}, d0) <= target) {
      if (snc_delay_bound(eps, QueueConfig{n, hi}, d0) <= target) {
        lo = hi;
      } else {
        lo = hi * 1e-9;
        while (hi - lo > 1e-4 * hi) {
          const double mid = 0.5 * (lo + hi);
          if (snc_delay_bound(eps, QueueConfig{n, mid}, d0) <= target) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
      }
    }
    const double thr_snc = k * lo;
    std::printf("    n=%3d eps=%.4e thr_exact=%.6f thr_snc=%.6f\n", n, eps, thr_exact, thr_snc);
    best_exact = std::max(best_exact, thr_exact);
    best_snc = std::max(best_snc, thr_snc);
  }
  expect(best_snc < best_exact, "c4 SNC throughput strictly below exact");
  std::printf("    max throughput: exact=%.6f snc=%.6f gap=%.1f%% (recorded, not gated)\n",
              best_exact, best_snc, 100.0 * (1.0 - best_snc / best_exact));
  return g_failures == 0;
}

// ---- criterion 5: RCUs sanity ----
bool criterion5() {
  const std::uint64_t samples = 1000000;
  // exactly 1 at zero SNR
  const McEstimate zero = rcus_epsilon(ChannelSpec{0.0, 100}, 30, default_alpha_grid(), 10000, 50);
  expect(zero.value == 1.0, "c5 rcus(rho=0) == 1 exactly");
  // monotone within 3 sigma on {100,200} x {0.5,1.0}
  std::array<std::array<McEstimate, 2>, 2> est;  // [n][rho]
  const int ns[2] = {100, 200};
  const double rhos[2] = {0.5, 1.0};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      est[i][j] = rcus_epsilon(ChannelSpec{rhos[j], ns[i]}, 30, default_alpha_grid(), samples,
                               5000 + 10 * i + j);
      std::printf("    rcus n=%d rho=%.1f -> %.6e (+-%.1e)\n", ns[i], rhos[j], est[i][j].value,
                  est[i][j].half_width);
    }
  }
  auto sigma3 = [](const McEstimate& a, const McEstimate& b) {
    // half_width is 1.96 sigma; combined 3 sigma budget
    return 3.0 / 1.959963984540054 * (a.half_width + b.half_width);
  };
  expect(est[1][0].value <= est[0][0].value + sigma3(est[1][0], est[0][0]),
         "c5 monotone in n at rho=0.5");
  expect(est[1][1].value <= est[0][1].value + sigma3(est[1][1], est[0][1]),
         "c5 monotone in n at rho=1.0");
  expect(est[0][1].value <= est[0][0].value + sigma3(est[0][1], est[0][0]),
         "c5 monotone in rho at n=100");
  expect(est[1][1].value <= est[1][0].value + sigma3(est[1][1], est[1][0]),
         "c5 monotone in rho at n=200");
  // bit-reproducibility under a fixed seed
  const McEstimate again =
      rcus_epsilon(ChannelSpec{1.0, 100}, 30, default_alpha_grid(), samples, 5010);
  expect(again.value == est[0][1].value && again.half_width == est[0][1].half_width,
         "c5 bit-reproducible under fixed seed");
  return g_failures == 0;
}

// ---- criterion 6: VLSF bound structure and Fig. 6 tradeoff ----
bool criterion6() {
  const ChannelSpec spec{1.0, 25};
  const int k = 30, ell = 10;
  const std::uint64_t samples = 100000;
  const std::uint64_t seed = 6001;
  const std::vector<double> grid = default_gamma_grid(k, 10);
  std::vector<VlsfBoundResult> runs;
  for (double gamma : grid) {
    runs.push_back(simulate_threshold_crossing(spec, k, gamma, ell, samples, seed));
  }
  for (std::size_t i = 1; i < runs.size(); ++i) {
    for (int t = 0; t < ell; ++t) {
      expect(runs[i].tau_tail[static_cast<std::size_t>(t)].value >=
                 runs[i - 1].tau_tail[static_cast<std::size_t>(t)].value,
             "c6 tau_tail non-decreasing in gamma at t=" + std::to_string(t + 1));
    }
    expect(runs[i].eps_undetected_bound.value <= runs[i - 1].eps_undetected_bound.value,
           "c6 undetected bound non-increasing in gamma (i=" + std::to_string(i) + ")");
  }
  // P_dv components cross as gamma sweeps
  const QueueConfig q{25, 2e-3};
  const GammaSweepResult sweep = optimize_gamma(spec, k, q, 500, grid, ell, samples, seed);
  bool delay_below = false, delay_above = false;
  for (const auto& pt : sweep.curve) {
    if (!pt.feasible) continue;
    std::printf("    gamma=%7.3f p_delay=%.3e eps=%.3e p_dv=%.3e\n", pt.gamma, pt.p_delay,
                pt.eps_u, pt.p_dv);
    if (pt.p_delay < pt.eps_u) delay_below = true;
    if (pt.p_delay > pt.eps_u) delay_above = true;
  }
  expect(delay_below && delay_above, "c6 delay and error components cross over the gamma grid");
  return g_failures == 0;
}

// ---- criterion 7: peak-age analytics vs oracle + steady-state identity ----
bool criterion7() {
  const std::uint64_t departures = 1000000;
  const std::uint64_t warmup = default_warmup(departures);
  std::uint64_t seed = 7000;
  const std::array<AgePolicy, 4> policies{AgePolicy::kDwt, AgePolicy::kKtn, AgePolicy::kKtl,
                                          AgePolicy::kLcfsS};
  const char* names[4] = {"dwt", "ktn", "ktl", "lcfs-s"};
  for (std::size_t p = 0; p < policies.size(); ++p) {
    for (double lambda : {0.01, 0.05}) {
      for (double eps : {0.1, 0.3}) {
        const ServiceModel s = arq_service_model(eps);
        const QueueConfig q{10, lambda};
        const RationalPgf pgf = peak_age_pgf(policies[p], s, q);
        const int grid = 50;
        const TailCurve tails = pgf.invert_ccdf(grid - 1);
        const SimReport sim =
            simulate_peak_age(policies[p], s, q, departures, warmup, seed++, grid);
        for (int j = 0; j < grid; ++j) {
          mc_close(sim.at(j), tails.at(j), sim.count,
                   std::string("c7 ") + names[p] + " lambda=" + std::to_string(lambda) +
                       " eps=" + std::to_string(eps) + " j=" + std::to_string(j));
        }
      }
    }
  }
  // p0 + p1 + p2 = 1 to 1e-12 on a 100-point grid
  int points = 0;
  for (double lambda : {0.005, 0.02, 0.08, 0.3, 0.7}) {
    for (int n : {1, 2, 5, 10, 20}) {
      for (double eps : {0.05, 0.3, 0.6, 0.9}) {
        const double qbar = std::exp(n * std::log1p(-lambda));
        const double u0 = -std::expm1(n * std::log1p(-lambda));
        const double u1 = eps * u0;
        const double d = (1.0 - eps) * qbar;
        const double p0 = d * d / (d * d + u0 * d + u0 * u1);
        const double p1 = u0 * p0 / d;
        const double p2 = u0 * u1 * p0 / (d * d);
        expect(std::abs(p0 + p1 + p2 - 1.0) <= 1e-12,
               "c7 p0+p1+p2 identity at lambda=" + std::to_string(lambda) +
                   " n=" + std::to_string(n) + " eps=" + std::to_string(eps));
        ++points;
      }
    }
  }
  expect(points == 100, "c7 parameter grid has 100 points");
  return g_failures == 0;
}

// ---- criterion 8: high-rate limits ----
bool criterion8() {
  const int n = 2;
  const QueueConfig q{n, 1.0 - 1e-9};
  for (double eps : {0.0, 0.3}) {
    const ServiceModel s = arq_service_model(eps);
    const std::array<AgePolicy, 4> policies{AgePolicy::kDwt, AgePolicy::kKtn, AgePolicy::kKtl,
                                            AgePolicy::kLcfsS};
    const char* names[4] = {"dwt", "ktn", "ktl", "lcfs-s"};
    for (std::size_t p = 0; p < policies.size(); ++p) {
      const RationalPgf pgf = peak_age_pgf(policies[p], s, q);
      const TailCurve tails = pgf.invert_ccdf(14);
      for (int a = 2; a <= 14; ++a) {
        const double limit = high_rate_limit(policies[p], eps, a * n, n);
        const double via_pgf = tails.at(a - 1);  // P[Pi >= a]
        expect(std::abs(limit - via_pgf) <= 1e-6,
               std::string("c8 ") + names[p] + " eps=" + std::to_string(eps) +
                   " a=" + std::to_string(a) + " limit=" + std::to_string(limit) +
                   " pgf=" + std::to_string(via_pgf));
      }
    }
  }
  const double l_lcfs = high_rate_limit(AgePolicy::kLcfsS, 0.3, 100, 10);
  const double l_ktl = high_rate_limit(AgePolicy::kKtl, 0.3, 100, 10);
  const double l_dwt = high_rate_limit(AgePolicy::kDwt, 0.3, 100, 10);
  expect(l_lcfs <= l_ktl && l_ktl <= l_dwt, "c8 ordering LCFS-S <= KTL <= DWT at eps=0.3");
  return g_failures == 0;
}

// ---- criterion 9: light-traffic limits ----
bool criterion9() {
  const ServiceModel s = arq_service_model(0.5);
  const QueueConfig q{10, 1e-9};
  const RationalPgf g = delay_pgf_sync(s, q);
  const TailCurve tails = g.invert_ccdf(30);
  for (int k = 0; k <= 30; ++k) {
    expect(std::abs(tails.at(k) - s.tail(k)) <= 1e-6,
           "c9 sync light traffic at k=" + std::to_string(k));
  }
  // Async limit: at lambda = 1e-9 the true tail at k >= n still carries the
  // O(n lambda) queueing mass (~4e-9 > 1e-9 at n = 5), so the 1e-9 bar is
  // checked at lambda = 1e-10 where the light-traffic limit holds at that
  // scale; the lambda = 1e-9 values are asserted against their exact residual.
  const ServiceModel det = arq_service_model(0.0);
  {
    const QueueConfig q2{5, 1e-10};
    const RationalPgf g2 = delay_pgf_async(det, q2);
    const TailCurve t2 = g2.invert_ccdf(10);
    for (int k = 0; k <= 10; ++k) {
      const double expect_v = k < 5 ? 1.0 : 0.0;
      expect(std::abs(t2.at(k) - expect_v) <= 1e-9,
             "c9 async deterministic service at k=" + std::to_string(k));
    }
  }
  {
    const QueueConfig q2{5, 1e-9};
    const RationalPgf g2 = delay_pgf_async(det, q2);
    const TailCurve t2 = g2.invert_ccdf(10);
    for (int k = 0; k <= 10; ++k) {
      const double expect_v =
          k < 5 ? 1.0 : static_cast<double>(std::max(0, 4 - (k - 5))) * 1e-9;
      expect(std::abs(t2.at(k) - expect_v) <= 1e-11,
             "c9 async residual mass at lambda=1e-9, k=" + std::to_string(k));
    }
  }
  return g_failures == 0;
}

// ---- criterion 10: CLI determinism ----
bool criterion10() {
  const std::string cli = URLLC_CLI_PATH;
  auto capture = [&](const std::string& env, const std::string& args) {
    const std::string cmd = env + " " + cli + " " + args + " 2>/dev/null";
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return std::string("<popen failed>");
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    pclose(pipe);
    return out;
  };
  const std::vector<std::string> cmds = {
      "rcus --n 100 --k 30 --snr-db 0 --samples 200000 --seed 77",
      "vlsf-bound --n 25 --k 30 --snr-db 0 --gamma 20 --ell-max 10 --samples 50000 --seed 9",
      "simulate --model fcfs --n 10 --lambda 0.01 --eps 0.5 --num 100000 --seed 11 --grid-max 30",
      "delay-ccdf --n 20 --eps 0.3 --lambda 0.005 --dmax 25 --method both",
      "age-ccdf --policy ktl --n 10 --lambda 0.02 --eps 0.3 --amax 30 --method both",
  };
  for (const auto& args : cmds) {
    const std::string a1 = capture("URLLC_LAB_THREADS=1", args);
    const std::string a2 = capture("URLLC_LAB_THREADS=1", args);
    const std::string b = capture("URLLC_LAB_THREADS=4", args);
    expect(!a1.empty(), "c10 output non-empty: " + args);
    expect(a1 == a2, "c10 repeat run identical: " + args);
    expect(a1 == b, "c10 thread-count independent: " + args);
  }
  return g_failures == 0;
}

struct Criterion {
  int id;
  const char* summary;
  bool (*fn)();
};

const Criterion kCriteria[] = {
    {1, "sync delay: exact inversion vs discrete-event oracle (3 sigma, 27 configs, d<=30)",
     criterion1},
    {2, "async delay: exact inversion vs channel-use oracle (3 sigma, n in {5,10})", criterion2},
    {3, "saddlepoint within 10% of exact where tail >= 1e-8 (grid + Fig.3 config)", criterion3},
    {4, "SNC bound dominates exact tail; SNC throughput below exact at 0 dB", criterion4},
    {5, "RCUs: =1 at rho=0, monotone in n and rho (3 sigma), bit-reproducible", criterion5},
    {6, "VLSF: tau_tail/eps monotone in gamma under CRN; P_dv components cross", criterion6},
    {7, "peak age: analytics vs oracle (3 sigma, 4 policies); p0+p1+p2=1 on 100 points",
     criterion7},
    {8, "high-rate limits match PGFs at lambda=1-1e-9 (1e-6); policy ordering", criterion8},
    {9, "light-traffic limits (sync 1e-6, async deterministic 1e-9)", criterion9},
    {10, "CLI byte-determinism across runs and worker counts {1,4}", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  bool all_pass = true;
  for (const auto& c : kCriteria) {
    if (!wanted.empty() &&
        std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) {
      continue;
    }
    g_checks = 0;
    g_failures = 0;
    bool ok = false;
    try {
      ok = c.fn();
    } catch (const std::exception& e) {
      std::printf("    EXCEPTION: %s\n", e.what());
      ok = false;
    }
    std::printf("[%s] criterion %d: %s (%d checks, %d failures)\n", ok ? "PASS" : "FAIL", c.id,
                c.summary, g_checks, g_failures);
    std::fflush(stdout);
    all_pass = all_pass && ok;
  }
  return all_pass ? 0 : 1;
}
