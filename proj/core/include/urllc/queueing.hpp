#pragma once

#include "urllc/queueing_types.hpp"
#include "urllc/service_model.hpp"

namespace urllc {

// lambda * n * E[tau]; the queue is stable iff this is < 1.
double traffic_intensity(const ServiceModel& service, const QueueConfig& q);

// Throws StabilityError when lambda * n * E[tau] >= 1, ConfigError for
// degenerate lambda.
void check_stability(const ServiceModel& service, const QueueConfig& q);

// Steady-state delay PGF (frames) of the frame-synchronous bulk-arrival queue:
//   G(s) = (1 - rho) (1-s) (qbar - B(s)) / ((1 - qbar)(s - B(s))),
//   B(s) = (1 - lambda + lambda G_tau(s))^n,  qbar = (1-lambda)^n,
// returned with the (s-1) factor cancelled and a stable evaluation form
// attached.
RationalPgf delay_pgf_sync(const ServiceModel& service, const QueueConfig& q);

// Steady-state delay PGF (channel uses) of the frame-asynchronous queue:
//   G(s) = (1 - rho) (s-1) G_tau(s^n) / (s - 1 + lambda (1 - G_tau(s^n))),
// same deflation and stable form. degree_cap bounds the expanded polynomial
// degree (n * support of tau).
RationalPgf delay_pgf_async(const ServiceModel& service, const QueueConfig& q,
                            int degree_cap = 100000);

// Union bound P_dv(d0) = P[Delta >= ceil(d0/n)] + eps_undetected, clipped to
// [0,1]. The tail is P[Delta > d-1] by the exact recursion or the saddlepoint
// approximation.
DelayAnalysis delay_violation(const RationalPgf& delay_pgf, int d0, const QueueConfig& q,
                              double eps_undetected, TailEvalMethod method);

// Stochastic-network-calculus bound (ARQ with perfect error detection only):
//   inf_{s>1, G_A(s) G_S(1/s) < 1} G_S(1/s)^{d-1} / (1 - G_A(s) G_S(1/s)),
//   G_A(s) = (1 - lambda + lambda s)^n, G_S(s) = eps + (1-eps) s, d = ceil(d0/n).
// Returns 1 when the feasible set is empty.
double snc_delay_bound(double eps_frame, const QueueConfig& q, int d0);

struct MaxRateResult {
  double lambda_star = 0.0;
  double throughput = 0.0;  // k_bits * lambda_star
};

// Largest lambda with P_dv(d0) <= target (relative tolerance 1e-4; bisection,
// monotone in lambda; exact recursion evaluation). Throws InfeasibleError when
// even lambda -> 0 violates the target.
MaxRateResult max_arrival_rate(const ServiceModel& service, int n, int d0, double target,
                               int k_bits);

}  // namespace urllc
