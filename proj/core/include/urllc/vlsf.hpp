#pragma once

#include <cstdint>
#include <vector>

#include "urllc/channel.hpp"
#include "urllc/queueing_types.hpp"
#include "urllc/service_model.hpp"

namespace urllc {

// Monte Carlo estimates of the threshold-decoding stopping time and error
// terms for a VLSF code truncated at ell_max frames.
struct VlsfBoundResult {
  double gamma = 0.0;
  int ell_max = 1;
  int k_bits = 1;
  ChannelSpec spec;
  // tau_tail[t-1] estimates P[min(ell_max, tau_hat) >= t], t = 1..ell_max.
  std::vector<McEstimate> tau_tail;
  McEstimate eps_undetected_bound;  // (2^k - 1) P[tau_bar <= min(ell_max, tau_hat)], clipped to 1
  McEstimate eps_detected_term;     // P[tau_hat >= ell_max + 1]
};

// Per sample: one transmitted-codeword information-density walk and one
// independent-codeword walk over the same channel outputs; tau_hat / tau_bar
// are their first threshold crossings at gamma (frame granularity).
VlsfBoundResult simulate_threshold_crossing(const ChannelSpec& spec, int k_bits, double gamma,
                                            int ell_max, std::uint64_t samples,
                                            std::uint64_t seed);

// Empirical service model from the truncated stopping-time tail, with
// eps_undetected = undetected bound + detected term.
ServiceModel vlsf_service_model(const VlsfBoundResult& result);

struct GammaPoint {
  double gamma = 0.0;
  bool feasible = false;   // stability held for the resulting service model
  double p_delay = 1.0;    // P[Delta >= ceil(d0/n)] (exact recursion)
  double eps_u = 1.0;      // undetected + detected error terms
  double p_dv = 1.0;       // clipped sum
};

struct GammaSweepResult {
  double gamma_star = 0.0;
  std::vector<GammaPoint> curve;
};

// Evaluates P_dv(d0) over a gamma grid (common random numbers across gamma)
// and returns the minimizing threshold with the full tradeoff curve.
// Infeasible grid points are marked, not fatal; throws InfeasibleError only
// if no grid point is feasible.
GammaSweepResult optimize_gamma(const ChannelSpec& spec, int k_bits, const QueueConfig& queue,
                                int d0, const std::vector<double>& gamma_grid, int ell_max,
                                std::uint64_t samples, std::uint64_t seed);

// CLI default grid: `points` log-spaced values on [0.25 k ln2, 4 k ln2].
std::vector<double> default_gamma_grid(int k_bits, int points = 20);

}  // namespace urllc
