#pragma once

#include "urllc/queueing_types.hpp"
#include "urllc/service_model.hpp"

namespace urllc {

// Packet-management policies for status updates (one admitted packet per
// frame at most):
//   Dwt   - FCFS, system capacity 1 (arrivals during service discarded)
//   Ktn   - FCFS, capacity 2 (keep the first packet arrived during service)
//   Ktl   - LCFS, capacity 2, preemption in queue (keep the last arrival)
//   LcfsS - LCFS, preemption in service (new arrival interrupts transmission)
enum class AgePolicy { kDwt, kKtn, kKtl, kLcfsS };

struct AgeAnalysis {
  RationalPgf peak_age_pgf;
  TailCurve ccdf;       // P[Pi > k] up to the violation index
  double p_age = 0.0;   // P[Pi >= ceil(a0/n)]
  double eps_undetected = 0.0;
  double p_av = 0.0;    // clipped union bound
  TailEvalMethod method = TailEvalMethod::kExact;
};

// Steady-state peak-age PGF. Dwt accepts any service model; Ktn/Ktl/LcfsS
// require geometric service with perfect error detection and a positive
// departure probability d = (1-eps)(1-lambda)^n.
RationalPgf peak_age_pgf(AgePolicy policy, const ServiceModel& service, const QueueConfig& q);

// P_av(a0) = P[Pi >= ceil(a0/n)] + eps_undetected, clipped.
AgeAnalysis age_violation(const RationalPgf& pgf, int a0, const QueueConfig& q,
                          double eps_undetected, TailEvalMethod method);

// lambda -> 1 limits of the peak-age violation probability, in closed form
// (sums of iid Geom(1-eps) service times):
//   Dwt:   P[T1+T2+1  >= ceil(a0/n)]
//   Ktn:   P[T1+T2+T3-1 >= ceil(a0/n)]
//   Ktl:   P[T1+T2    >= ceil(a0/n)]
//   LcfsS: P[T1+1     >= ceil(a0/n)]
double high_rate_limit(AgePolicy policy, double eps_frame, int a0, int n);

}  // namespace urllc
