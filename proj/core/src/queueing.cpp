#include "urllc/queueing.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "urllc/errors.hpp"
#include "urllc/numerics.hpp"
#include "urllc/saddlepoint.hpp"

namespace urllc {

namespace {

double pow_by_squaring(double base, int n) {
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return r;
}

void validate_queue(const QueueConfig& q) {
  if (q.n < 1) throw ConfigError("QueueConfig: n must be >= 1");
  if (!(q.lambda > 0.0) || !(q.lambda < 1.0)) {
    throw ConfigError("QueueConfig: lambda must lie strictly in (0,1)");
  }
}

// ---- truncated power series helpers (coefficients of s^0..s^K) ----

using Series = std::vector<double>;

Series series_mul(const Series& a, const Series& b, int K) {
  Series r(static_cast<std::size_t>(K) + 1, 0.0);
  const int na = std::min<int>(K, static_cast<int>(a.size()) - 1);
  for (int i = 0; i <= na; ++i) {
    if (a[static_cast<std::size_t>(i)] == 0.0) continue;
    const int nb = std::min<int>(K - i, static_cast<int>(b.size()) - 1);
    for (int j = 0; j <= nb; ++j) {
      r[static_cast<std::size_t>(i + j)] +=
          a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
  }
  return r;
}

Series series_pow(Series base, int n, int K) {
  Series r(static_cast<std::size_t>(K) + 1, 0.0);
  r[0] = 1.0;
  base.resize(static_cast<std::size_t>(K) + 1, 0.0);
  while (n > 0) {
    if (n & 1) r = series_mul(r, base, K);
    n >>= 1;
    if (n > 0) base = series_mul(base, base, K);
  }
  return r;
}

// sum_{j=0}^{n-1} base^j, by the halving identity S_{2m} = S_m (1 + base^m).
Series series_geom_sum(const Series& base, int n, int K) {
  if (n == 1) {
    Series one(static_cast<std::size_t>(K) + 1, 0.0);
    one[0] = 1.0;
    return one;
  }
  if (n % 2 == 0) {
    Series half = series_geom_sum(base, n / 2, K);
    Series bp = series_pow(base, n / 2, K);
    bp[0] += 1.0;
    return series_mul(half, bp, K);
  }
  Series s = series_geom_sum(base, n - 1, K);
  const Series bp = series_pow(base, n - 1, K);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] += bp[i];
  return s;
}

// Triangular division num/den truncated at K; den[0] must be nonzero.
Series series_div(const Series& num, const Series& den, int K) {
  Series r(static_cast<std::size_t>(K) + 1, 0.0);
  const double d0 = den[0];
  if (d0 == 0.0) throw NumericalError("series_div: zero leading denominator coefficient");
  for (int k = 0; k <= K; ++k) {
    double acc = (k < static_cast<int>(num.size())) ? num[static_cast<std::size_t>(k)] : 0.0;
    const int uh = std::min<int>(k, static_cast<int>(den.size()) - 1);
    for (int u = 1; u <= uh; ++u) {
      acc -= den[static_cast<std::size_t>(u)] * r[static_cast<std::size_t>(k - u)];
    }
    r[static_cast<std::size_t>(k)] = acc / d0;
  }
  return r;
}

std::vector<double> tails_from_pmf_series(const Series& pm) {
  std::vector<double> t(pm.size());
  double cum = 0.0;
  for (std::size_t k = 0; k < pm.size(); ++k) {
    cum += pm[k];
    t[k] = 1.0 - cum;
  }
  return t;
}

// Service pmf/tail series up to K.
Series service_pmf_series(const ServiceModel& service, int K) {
  Series p(static_cast<std::size_t>(K) + 1, 0.0);
  if (service.is_geometric()) {
    const double eps = service.eps_frame();
    double w = 1.0 - eps;
    for (int j = 1; j <= K; ++j) {
      p[static_cast<std::size_t>(j)] = w;
      w *= eps;
    }
  } else {
    const auto& pm = service.pmf();
    for (std::size_t i = 0; i < pm.size() && i + 1 <= static_cast<std::size_t>(K); ++i) {
      p[i + 1] = pm[i];
    }
  }
  return p;
}

Series service_tail_series(const ServiceModel& service, int K) {
  Series t(static_cast<std::size_t>(K) + 1, 0.0);
  for (int j = 0; j <= K; ++j) t[static_cast<std::size_t>(j)] = service.tail(j);
  return t;
}

// Dual2 evaluation of a small polynomial.
Dual2 dual_poly(const std::vector<double>& c, const Dual2& s) {
  Dual2 r(0.0);
  for (std::size_t i = c.size(); i-- > 0;) r = r * s + c[i];
  return r;
}

Dual2 dual_geom_sum(const Dual2& base, int n) {
  if (n == 1) return Dual2(1.0);
  if (n % 2 == 0) {
    return dual_geom_sum(base, n / 2) * (base.powi(n / 2) + 1.0);
  }
  return dual_geom_sum(base, n - 1) + base.powi(n - 1);
}

}  // namespace

double traffic_intensity(const ServiceModel& service, const QueueConfig& q) {
  return q.lambda * static_cast<double>(q.n) * service.mean();
}

void check_stability(const ServiceModel& service, const QueueConfig& q) {
  validate_queue(q);
  const double rho = traffic_intensity(service, q);
  if (!(rho < 1.0)) {
    throw StabilityError("traffic intensity lambda*n*E[tau] = " + std::to_string(rho) +
                         " >= 1: no steady state");
  }
}

RationalPgf delay_pgf_sync(const ServiceModel& service, const QueueConfig& q) {
  check_stability(service, q);
  const int n = q.n;
  const double lambda = q.lambda;
  const double rho = traffic_intensity(service, q);
  const RationalPgf gtau = service.pgf();

  // qbar must match the constant term of inner^n bit-for-bit, so compute both
  // by the same squaring order (inner(0) = 1 - lambda exactly: tau >= 1).
  const double qbar = pow_by_squaring(1.0 - lambda, n);
  const double one_m_qbar = -std::expm1(static_cast<double>(n) * std::log1p(-lambda));

  const Polynomial inner = gtau.den().scaled(1.0 - lambda) + gtau.num().scaled(lambda);
  const Polynomial nb = inner.pow(n);
  const Polynomial db = gtau.den().pow(n);
  const Polynomial num = (nb - db.scaled(qbar)).scaled((1.0 - rho) / one_m_qbar);
  const Polynomial s_db = Polynomial::identity() * db;
  const Polynomial den = (s_db - nb).deflate_at_one();
  RationalPgf g(num, den);

  // Stable closed form with the (s-1) factor cancelled:
  //   G = (1-rho)(B - qbar) / ((1-qbar) H),
  //   H = 1 - lambda * Gdiv(s) * sum_{j<n} c(s)^j,  c = 1-lambda+lambda*Gtau,
  //   Gdiv = (Gtau(s) - 1)/(s - 1) (tail-coefficient form, all positive).
  StablePgfForm form;
  {
    std::vector<double> tn = gtau.num().coeffs(), td = gtau.den().coeffs();
    std::vector<double> dn, dd;  // Gdiv = dn/dd
    if (service.is_geometric()) {
      dn = {1.0};
      dd = {1.0, -service.eps_frame()};
    } else {
      const auto& pm = service.pmf();
      dn.resize(pm.size(), 0.0);
      for (std::size_t j = 0; j < pm.size(); ++j) {
        double t = 1.0;
        for (std::size_t i = 0; i < j; ++i) t -= pm[i];
        dn[j] = std::max(t, 0.0);
      }
      dd = {1.0};
    }
    form.eval = [tn, td, dn, dd, lambda, n, one_m_qbar, rho](Dual2 s) {
      const Dual2 gt = dual_poly(tn, s) / dual_poly(td, s);
      const Dual2 c = (1.0 - lambda) + lambda * gt;
      const Dual2 gsum = dual_geom_sum(c, n);
      const Dual2 gdiv = dual_poly(dn, s) / dual_poly(dd, s);
      // B - qbar = (B - 1) + (1 - qbar) with B - 1 = lambda (s-1) Gdiv gsum:
      // no near-cancelling subtraction, and exactly (1-qbar)(1-rho)/H(1) -> 1 at s=1.
      const Dual2 b_minus_qbar = lambda * (s - 1.0) * gdiv * gsum + one_m_qbar;
      const Dual2 h = 1.0 - lambda * gdiv * gsum;
      return b_minus_qbar * ((1.0 - rho) / one_m_qbar) / h;
    };
    form.ccdf_series = [service, lambda, n, qbar, one_m_qbar, rho](int k_max) {
      const int K = k_max;
      Series c = service_pmf_series(service, K);
      for (double& v : c) v *= lambda;
      c[0] = 1.0 - lambda;
      const Series big_b = series_pow(c, n, K);
      const Series gsum = series_geom_sum(c, n, K);
      Series gdiv = service_tail_series(service, K);
      for (double& v : gdiv) v *= lambda;
      Series h = series_mul(gdiv, gsum, K);
      for (double& v : h) v = -v;
      h[0] += 1.0;
      Series num_s = big_b;
      num_s[0] -= qbar;
      for (double& v : num_s) v *= (1.0 - rho) / one_m_qbar;
      const Series pm = series_div(num_s, h, K);
      return tails_from_pmf_series(pm);
    };
  }
  g.attach_stable_form(std::move(form));
  if (!g.is_normalized(1e-9)) {
    throw NumericalError("delay_pgf_sync: G(1) != 1 after construction");
  }
  return g;
}

RationalPgf delay_pgf_async(const ServiceModel& service, const QueueConfig& q, int degree_cap) {
  check_stability(service, q);
  const int n = q.n;
  const double lambda = q.lambda;
  const double rho = traffic_intensity(service, q);
  const RationalPgf gtau = service.pgf();

  const long long deg =
      static_cast<long long>(std::max(gtau.num().degree(), gtau.den().degree())) * n + 1;
  if (deg > degree_cap) {
    throw NumericalError("delay_pgf_async: expanded degree " + std::to_string(deg) +
                         " exceeds cap " + std::to_string(degree_cap) +
                         "; use the saddlepoint method");
  }

  const Polynomial nsub = gtau.num().substitute_power(n);
  const Polynomial dsub = gtau.den().substitute_power(n);
  // den = (s-1) D(s^n) + lambda (D(s^n) - N(s^n)), deflated at s=1
  const Polynomial s_minus_1 = Polynomial({-1.0, 1.0});
  const Polynomial den_raw = s_minus_1 * dsub + (dsub - nsub).scaled(lambda);
  const Polynomial den = den_raw.deflate_at_one();
  const Polynomial num = nsub.scaled(1.0 - rho);
  RationalPgf g(num, den);

  StablePgfForm form;
  {
    std::vector<double> tn = gtau.num().coeffs(), td = gtau.den().coeffs();
    std::vector<double> dn, dd;
    if (service.is_geometric()) {
      dn = {1.0};
      dd = {1.0, -service.eps_frame()};
    } else {
      const auto& pm = service.pmf();
      dn.resize(pm.size(), 0.0);
      for (std::size_t j = 0; j < pm.size(); ++j) {
        double t = 1.0;
        for (std::size_t i = 0; i < j; ++i) t -= pm[i];
        dn[j] = std::max(t, 0.0);
      }
      dd = {1.0};
    }
    // G = (1-rho) Gtau(s^n) / (1 - lambda Gdiv(s^n) sum_{j<n} s^j)
    form.eval = [tn, td, dn, dd, lambda, n, rho](Dual2 s) {
      const Dual2 sn = s.powi(n);
      const Dual2 gt = dual_poly(tn, sn) / dual_poly(td, sn);
      const Dual2 gdiv = dual_poly(dn, sn) / dual_poly(dd, sn);
      const Dual2 gsum = dual_geom_sum(s, n);
      const Dual2 h = 1.0 - lambda * gdiv * gsum;
      return (1.0 - rho) * gt / h;
    };
    form.ccdf_series = [service, lambda, n, rho](int k_max) {
      const int K = k_max;
      const Series ps = service_pmf_series(service, std::max(0, K / n));
      Series gt(static_cast<std::size_t>(K) + 1, 0.0);
      for (std::size_t j = 0; j < ps.size() && static_cast<long long>(j) * n <= K; ++j) {
        gt[j * static_cast<std::size_t>(n)] = ps[j];
      }
      const Series ts = service_tail_series(service, std::max(0, K / n));
      Series gdiv(static_cast<std::size_t>(K) + 1, 0.0);
      for (std::size_t j = 0; j < ts.size() && static_cast<long long>(j) * n <= K; ++j) {
        gdiv[j * static_cast<std::size_t>(n)] = lambda * ts[j];
      }
      Series ones(static_cast<std::size_t>(std::min(K, n - 1)) + 1, 1.0);
      Series h = series_mul(gdiv, ones, K);
      for (double& v : h) v = -v;
      h[0] += 1.0;
      Series num_s = gt;
      for (double& v : num_s) v *= (1.0 - rho);
      const Series pm = series_div(num_s, h, K);
      return tails_from_pmf_series(pm);
    };
  }
  g.attach_stable_form(std::move(form));
  if (!g.is_normalized(1e-9)) {
    throw NumericalError("delay_pgf_async: G(1) != 1 after construction");
  }
  return g;
}

DelayAnalysis delay_violation(const RationalPgf& delay_pgf, int d0, const QueueConfig& q,
                              double eps_undetected, TailEvalMethod method) {
  if (d0 < 1) throw ConfigError("delay_violation: d0 must be >= 1");
  if (eps_undetected < 0.0 || eps_undetected > 1.0) {
    throw ConfigError("delay_violation: eps_undetected must be in [0,1]");
  }
  const int d = ceil_div(d0, q.n);
  DelayAnalysis a;
  a.delay_pgf = delay_pgf;
  a.mean = delay_pgf.mean();
  a.method = method;
  a.eps_undetected = eps_undetected;
  if (method == TailEvalMethod::kExact) {
    a.ccdf = delay_pgf.invert_ccdf(d - 1);
    a.p_delay = a.ccdf.at(d - 1);  // P[Delta > d-1] = P[Delta >= d]
  } else {
    a.ccdf.method = TailMethod::kSaddlepoint;
    a.ccdf.values.reserve(static_cast<std::size_t>(d));
    double prev = 1.0;
    for (int k = 0; k <= d - 1; ++k) {
      double v = saddlepoint_ccdf(delay_pgf, k + 1);
      v = std::min(v, prev);
      a.ccdf.values.push_back(v);
      prev = v;
    }
    a.p_delay = a.ccdf.at(d - 1);
  }
  a.p_dv = std::min(1.0, std::max(0.0, a.p_delay + eps_undetected));
  return a;
}

double snc_delay_bound(double eps_frame, const QueueConfig& q, int d0) {
  validate_queue(q);
  if (eps_frame < 0.0 || eps_frame >= 1.0) {
    throw ConfigError("snc_delay_bound: eps_frame must be in [0,1)");
  }
  if (d0 < 1) throw ConfigError("snc_delay_bound: d0 must be >= 1");
  const int d = ceil_div(d0, q.n);
  const double n = static_cast<double>(q.n);
  const double lambda = q.lambda;
  // log[G_A(e^u) G_S(e^{-u})]: G_A(s) = (1-lambda+lambda s)^n, G_S(x)=eps+(1-eps)x
  auto log_prod = [&](double u) {
    const double s = std::exp(u);
    const double ga = n * std::log1p(lambda * (s - 1.0));
    const double gs = std::log(eps_frame + (1.0 - eps_frame) / s);
    return ga + gs;
  };
  // Feasible only if the product dips below 1 just above s=1.
  if (n * lambda - (1.0 - eps_frame) >= 0.0) return 1.0;
  // Bracket the far end where the product crosses back above 1.
  double u = 1e-6;
  double u_hi = 0.0;
  const double u_cap = 690.0 / std::max(1.0, n * lambda);  // overflow guard for G_A
  while (u < u_cap) {
    if (log_prod(u) > 0.0) {
      u_hi = u;
      break;
    }
    u *= 2.0;
  }
  if (u_hi == 0.0) {
    u_hi = std::min(u, u_cap);
  } else {
    u_hi = bisect_root(log_prod, u / 2.0, u_hi, 1e-13);
  }
  auto objective = [&](double u2) {
    const double s = std::exp(u2);
    const double lgs = std::log(eps_frame + (1.0 - eps_frame) / s);
    const double lp = log_prod(u2);
    if (lp >= 0.0) return 1e300;
    return static_cast<double>(d - 1) * lgs - std::log1p(-std::exp(lp));
  };
  const double u_star = golden_section_min(objective, 1e-12, u_hi * (1.0 - 1e-12), 1e-13);
  const double val = std::exp(objective(u_star));
  return std::min(1.0, val);
}

MaxRateResult max_arrival_rate(const ServiceModel& service, int n, int d0, double target,
                               int k_bits) {
  if (!(target > 0.0) || target > 1.0) {
    throw ConfigError("max_arrival_rate: target must be in (0,1]");
  }
  if (n < 1) throw ConfigError("max_arrival_rate: n must be >= 1");
  if (d0 < 1) throw ConfigError("max_arrival_rate: d0 must be >= 1");
  const int d = ceil_div(d0, n);
  const double eps_u = service.eps_undetected();
  // lambda -> 0 limit: delay reduces to the service time.
  const double floor_pdv = std::min(1.0, service.tail(d - 1) + eps_u);
  if (floor_pdv > target) {
    throw InfeasibleError("max_arrival_rate: even lambda -> 0 violates the target (floor " +
                          std::to_string(floor_pdv) + " > " + std::to_string(target) + ")");
  }
  double lambda_hi = 1.0 / (static_cast<double>(n) * service.mean()) - 1e-12;
  lambda_hi = std::min(lambda_hi, 1.0 - 1e-12);
  if (lambda_hi <= 0.0) {
    throw InfeasibleError("max_arrival_rate: stability region is empty");
  }
  auto p_dv_at = [&](double lambda) {
    const QueueConfig q{n, lambda};
    const RationalPgf g = delay_pgf_sync(service, q);
    const TailCurve t = g.invert_ccdf(d - 1);
    return std::min(1.0, t.at(d - 1) + eps_u);
  };
  if (p_dv_at(lambda_hi) <= target) {
    return {lambda_hi, static_cast<double>(k_bits) * lambda_hi};
  }
  double lo = 0.0, hi = lambda_hi;
  while (hi - lo > 1e-4 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (p_dv_at(mid) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, static_cast<double>(k_bits) * lo};
}

}  // namespace urllc
