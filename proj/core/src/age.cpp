#include "urllc/age.hpp"

#include <cmath>
#include <string>

#include "urllc/errors.hpp"
#include "urllc/numerics.hpp"
#include "urllc/saddlepoint.hpp"

namespace urllc {

namespace {

void validate_queue_for_age(const QueueConfig& q) {
  if (q.n < 1) throw ConfigError("age: n must be >= 1");
  if (!(q.lambda > 0.0) || !(q.lambda < 1.0)) {
    throw ConfigError("age: lambda must lie strictly in (0,1)");
  }
}

void require_intermediate_normalized(const RationalPgf& g, const char* what) {
  if (!g.is_normalized(1e-9)) {
    throw NumericalError(std::string("peak_age_pgf: intermediate PGF ") + what +
                         " is not normalized");
  }
}

// Negative binomial tail P[T1+...+Tr >= m] with Ti iid Geom(1-eps) on {1,2,..}
// = P[Binomial(m-1, 1-eps) <= r-1].
double negbin_tail(int r, double eps, long long m) {
  if (m <= r) return 1.0;
  if (eps == 0.0) return 0.0;  // sum is exactly r < m
  const long long trials = m - 1;
  const double log_p = std::log1p(-eps);  // log(1-eps)
  const double log_q = std::log(eps);
  double sum = 0.0;
  double log_comb = 0.0;  // log C(trials, 0)
  for (int i = 0; i <= r - 1; ++i) {
    if (i > 0) {
      log_comb += std::log(static_cast<double>(trials - i + 1)) - std::log(static_cast<double>(i));
    }
    sum += std::exp(log_comb + static_cast<double>(i) * log_p +
                    static_cast<double>(trials - i) * log_q);
  }
  return std::min(1.0, sum);
}

}  // namespace

RationalPgf peak_age_pgf(AgePolicy policy, const ServiceModel& service, const QueueConfig& q) {
  validate_queue_for_age(q);
  const int n = q.n;
  const double lambda = q.lambda;
  const double qbar = std::exp(static_cast<double>(n) * std::log1p(-lambda));  // (1-lambda)^n
  const double u0 = -std::expm1(static_cast<double>(n) * std::log1p(-lambda));  // 1 - qbar

  // A ~ Geom(1 - qbar): gap from a service completion to the next arrival.
  const RationalPgf g_a(Polynomial({0.0, u0}), Polynomial({1.0, -qbar}));

  if (policy == AgePolicy::kDwt) {
    // Pi = T1 + T2 + A for any service law.
    const RationalPgf gt = service.pgf();
    RationalPgf pi = gt * gt * g_a;
    require_intermediate_normalized(pi, "G_Pi (DWT)");
    return pi;
  }

  if (!service.is_geometric() || service.eps_undetected() != 0.0) {
    throw ConfigError(
        "peak_age_pgf: KTN/KTL/LCFS-S require geometric ARQ service with perfect error "
        "detection");
  }
  const double eps = service.eps_frame();

  const RationalPgf g_t = RationalPgf::geometric(eps);
  // Service conditioned on "no arrival during it": Geom(1 - eps qbar).
  const RationalPgf g_t0 = RationalPgf::geometric(eps * qbar);
  require_intermediate_normalized(g_t0, "G_T0");

  if (policy == AgePolicy::kLcfsS) {
    const double p_d = (1.0 - eps) / (1.0 - eps * qbar);  // no preemption during a service
    if (!(p_d > 0.0)) throw ConfigError("peak_age_pgf: degenerate delivery probability");
    // G_A0 = (G_A - (1-p_d) G_T0) / p_d
    const RationalPgf g_a0 = (g_a - g_t0.scaled(1.0 - p_d)).scaled(1.0 / p_d);
    require_intermediate_normalized(g_a0, "G_A0");
    // Pi = A0 + sum of Geom(p_d)-many T0 segments
    const Polynomial geo_num = g_t0.num().scaled(p_d);
    const Polynomial geo_den = g_t0.den() - g_t0.num().scaled(1.0 - p_d);
    const RationalPgf segments(geo_num, geo_den);
    require_intermediate_normalized(segments, "G_T0 compound (LCFS-S)");
    RationalPgf pi = g_a0 * segments;
    require_intermediate_normalized(pi, "G_Pi (LCFS-S)");
    return pi;
  }

  // KTN / KTL: G_Pi = G_W * G_T * (c G_T0 G_A + (1-c) G_T1), where
  // G_T1 = (G_T - c G_T0)/(1-c) is the complementary conditional service and
  // c weights the "service saw no queue entry" branch.
  const double u1 = eps * u0;
  const double d = (1.0 - eps) * qbar;
  if (!(d > 0.0)) {
    throw ConfigError("peak_age_pgf: departure probability d = (1-eps)(1-lambda)^n is zero");
  }
  // KTN: chain weights. An arrival in the departure frame of a service falls
  // between queue tenures and is dropped, so the admitted-packet weights are
  // the conditional state probabilities p0/(p0+p1), p1/(p0+p1).
  // KTL: a departure-frame arrival still wins the queue slot (last arrival of
  // the tenure). The branch weight becomes the probability that a whole
  // service sees no queue entry at all: (1-eps) qbar / (1 - eps qbar). This is
  // the frame-synchronous analogue of the continuous-time weights (both
  // coincide with them as lambda -> 0 and as lambda -> 1); it is what the
  // tenure-exact discrete process yields and what the simulation oracle
  // reproduces.
  const double c = policy == AgePolicy::kKtn ? d / (d + u0) : d / (1.0 - eps * qbar);

  // (G_T - c G_T0)/(1-c)
  const RationalPgf g_t1 =
      g_t.scaled(1.0 / (1.0 - c)) - g_t0.scaled(c / (1.0 - c));
  require_intermediate_normalized(g_t1, "G_T1");

  RationalPgf g_w;
  if (policy == AgePolicy::kKtn) {
    // waits: empty-arrival (prob p0/(p0+p1)) or the memoryless residual T - 1
    g_w = g_t.shift_down().scaled(u0 / (d + u0)).add_constant(d / (d + u0));
  } else {  // kKtl: the last-of-tenure survivor waits T0 - 1
    g_w = g_t0.shift_down().scaled(1.0 - c).add_constant(c);
  }
  require_intermediate_normalized(g_w, "G_W");

  const RationalPgf mix = (g_t0 * g_a).scaled(c) + g_t1.scaled(1.0 - c);
  require_intermediate_normalized(mix, "arrival/service mixture");
  RationalPgf pi = g_w * g_t * mix;
  require_intermediate_normalized(pi, "G_Pi (KTN/KTL)");
  return pi;
}

AgeAnalysis age_violation(const RationalPgf& pgf, int a0, const QueueConfig& q,
                          double eps_undetected, TailEvalMethod method) {
  if (a0 < 1) throw ConfigError("age_violation: a0 must be >= 1");
  if (eps_undetected < 0.0 || eps_undetected > 1.0) {
    throw ConfigError("age_violation: eps_undetected must be in [0,1]");
  }
  const int a = ceil_div(a0, q.n);
  AgeAnalysis r;
  r.peak_age_pgf = pgf;
  r.method = method;
  r.eps_undetected = eps_undetected;
  if (method == TailEvalMethod::kExact) {
    r.ccdf = pgf.invert_ccdf(a - 1);
    r.p_age = r.ccdf.at(a - 1);
  } else {
    r.ccdf.method = TailMethod::kSaddlepoint;
    double prev = 1.0;
    for (int k = 0; k <= a - 1; ++k) {
      double v = saddlepoint_ccdf(pgf, k + 1);
      v = std::min(v, prev);
      r.ccdf.values.push_back(v);
      prev = v;
    }
    r.p_age = r.ccdf.at(a - 1);
  }
  r.p_av = std::min(1.0, std::max(0.0, r.p_age + eps_undetected));
  return r;
}

double high_rate_limit(AgePolicy policy, double eps_frame, int a0, int n) {
  if (eps_frame < 0.0 || eps_frame >= 1.0) {
    throw ConfigError("high_rate_limit: eps_frame must be in [0,1)");
  }
  if (a0 < 1 || n < 1) throw ConfigError("high_rate_limit: a0 and n must be >= 1");
  const long long a = ceil_div(a0, n);
  switch (policy) {
    case AgePolicy::kDwt:
      return negbin_tail(2, eps_frame, a - 1);
    case AgePolicy::kKtn:
      return negbin_tail(3, eps_frame, a + 1);
    case AgePolicy::kKtl:
      return negbin_tail(2, eps_frame, a);
    case AgePolicy::kLcfsS:
      return negbin_tail(1, eps_frame, a - 1);
  }
  throw ConfigError("high_rate_limit: unknown policy");
}

}  // namespace urllc
