#pragma once

#include "urllc/rational_pgf.hpp"
#include "urllc/tail_curve.hpp"

namespace urllc {

// Frame size n (channel uses) and per-channel-use arrival probability lambda.
struct QueueConfig {
  int n = 1;
  double lambda = 0.0;
};

enum class TailEvalMethod { kExact, kSaddlepoint };

struct DelayAnalysis {
  RationalPgf delay_pgf;
  double mean = 0.0;       // frames (sync) or channel uses (async)
  TailCurve ccdf;          // P[Delta > k] up to the violation index
  double p_delay = 0.0;    // P[Delta >= ceil(d0/n)]
  double eps_undetected = 0.0;
  double p_dv = 0.0;       // clipped union bound
  TailEvalMethod method = TailEvalMethod::kExact;
};

}  // namespace urllc
