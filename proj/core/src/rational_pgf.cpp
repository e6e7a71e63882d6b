#include "urllc/rational_pgf.hpp"

#include <cmath>
#include <cstddef>

#include "urllc/errors.hpp"

namespace urllc {

RationalPgf::RationalPgf(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  const double scale = den_.max_abs_coeff();
  if (std::abs(den_.coeffs()[0]) < 1e-14 * (scale > 0 ? scale : 1.0)) {
    throw NumericalError("RationalPgf: denominator vanishes at s=0");
  }
}

RationalPgf RationalPgf::from_pmf(const std::vector<double>& pmf) {
  double sum = 0.0;
  for (double p : pmf) {
    if (p < -1e-12) throw ConfigError("from_pmf: negative probability mass");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("from_pmf: mass does not sum to 1");
  return RationalPgf(Polynomial(pmf), Polynomial({1.0}));
}

RationalPgf RationalPgf::geometric(double fail) {
  if (fail < 0.0 || fail >= 1.0) throw ConfigError("geometric: failure probability not in [0,1)");
  return RationalPgf(Polynomial({0.0, 1.0 - fail}), Polynomial({1.0, -fail}));
}

RationalPgf RationalPgf::point_mass(int k) {
  std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
  c.back() = 1.0;
  return RationalPgf(Polynomial(std::move(c)), Polynomial({1.0}));
}

double RationalPgf::eval(double s) const {
  const double d = den_.eval(s);
  const double scale = den_.max_abs_coeff();
  if (std::abs(d) < 1e-14 * (scale > 0 ? scale : 1.0)) {
    throw NumericalError("RationalPgf::eval: pole at s");
  }
  return num_.eval(s) / d;
}

void RationalPgf::eval_with_derivatives(double s, double& g0, double& g1, double& g2) const {
  if (stable_) {
    const Dual2 g = stable_->eval(Dual2::variable(s));
    g0 = g.v;
    g1 = g.d1;
    g2 = g.d2;
    return;
  }
  const double d = den_.eval(s);
  const double scale = den_.max_abs_coeff();
  if (std::abs(d) < 1e-14 * (scale > 0 ? scale : 1.0)) {
    throw NumericalError("RationalPgf::eval_with_derivatives: pole at s");
  }
  const Polynomial n1 = num_.derivative();
  const Polynomial d1 = den_.derivative();
  const double n = num_.eval(s);
  const double np = n1.eval(s);
  const double dp = d1.eval(s);
  const double npp = n1.derivative().eval(s);
  const double dpp = d1.derivative().eval(s);
  g0 = n / d;
  g1 = (np - g0 * dp) / d;
  g2 = (npp - 2.0 * g1 * dp - g0 * dpp) / d;
}

double RationalPgf::mean() const {
  if (stable_) {
    const Dual2 g = stable_->eval(Dual2::variable(1.0));
    return g.d1 / g.v;
  }
  Polynomial n = num_, d = den_;
  for (int pass = 0; pass < 8; ++pass) {
    const double dv = d.eval(1.0);
    const double nv = n.eval(1.0);
    const double dscale = std::max(d.max_abs_coeff(), 1e-300);
    const double nscale = std::max(n.max_abs_coeff(), 1e-300);
    if (std::abs(dv) > 1e-9 * dscale) {
      const double np = n.derivative().eval(1.0);
      const double dp = d.derivative().eval(1.0);
      return (np * dv - nv * dp) / (dv * dv);
    }
    if (std::abs(nv) > 1e-9 * nscale) {
      throw NumericalError("pgf_mean: derivative diverges at s=1 (infinite mean)");
    }
    // 0/0 at s=1: cancel the common (s-1) factor and retry.
    n = n.deflate_at_one();
    d = d.deflate_at_one();
  }
  throw NumericalError("pgf_mean: repeated deflation failed");
}

bool RationalPgf::finite_support() const {
  const Polynomial& d = den_;
  const double scale = d.max_abs_coeff();
  for (std::size_t k = 1; k < d.coeffs().size(); ++k) {
    if (std::abs(d.coeffs()[k]) > 1e-12 * scale) return false;
  }
  return true;
}

double RationalPgf::pmf_edge(int k) const {
  const auto& c = num_.coeffs();
  const double v = (k >= 0 && k < static_cast<int>(c.size())) ? c[static_cast<std::size_t>(k)] : 0.0;
  return v / den_.coeffs()[0];
}

void RationalPgf::attach_stable_form(StablePgfForm form) {
  stable_ = std::make_shared<const StablePgfForm>(std::move(form));
}

bool RationalPgf::is_normalized(double tol) const {
  if (stable_) {
    return std::abs(stable_->eval(Dual2::variable(1.0)).v - 1.0) <= tol;
  }
  const double dv = den_.eval(1.0);
  const double scale = std::max(den_.max_abs_coeff(), 1e-300);
  if (std::abs(dv) < 1e-12 * scale) return false;
  return std::abs(num_.eval(1.0) / dv - 1.0) <= tol;
}

TailCurve RationalPgf::invert_ccdf(int k_max) const {
  if (k_max < 0) throw ConfigError("invert_ccdf: k_max must be >= 0");
  std::vector<double> t;
  if (stable_ && stable_->ccdf_series) {
    t = stable_->ccdf_series(k_max);
  } else {
    // (1 - G)/(1 - s) = -[(den - num)/(s - 1)] / den; equate coefficients.
    const Polynomial diff = den_ - num_;
    const Polynomial a = diff.deflate_at_one().scaled(-1.0);
    const std::vector<double>& ac = a.coeffs();
    const std::vector<double>& bc = den_.coeffs();
    const double b0 = bc[0];
    if (b0 == 0.0) throw NumericalError("invert_ccdf: b_0 = 0");
    t.resize(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
      double acc = (k < static_cast<int>(ac.size())) ? ac[static_cast<std::size_t>(k)] : 0.0;
      const int u_hi = std::min<int>(k, static_cast<int>(bc.size()) - 1);
      for (int u = 1; u <= u_hi; ++u) {
        acc -= bc[static_cast<std::size_t>(u)] * t[static_cast<std::size_t>(k - u)];
      }
      t[static_cast<std::size_t>(k)] = acc / b0;
    }
  }
  TailCurve curve;
  curve.method = TailMethod::kExactRecursion;
  curve.values.reserve(t.size());
  double prev = 1.0;
  for (double v : t) {
    if (v < -1e-6 || v > 1.0 + 1e-6) {
      throw NumericalError("invert_ccdf: recursion left [-1e-6, 1+1e-6] (instability)");
    }
    double clipped = std::min(std::max(v, 0.0), 1.0);
    clipped = std::min(clipped, prev);  // exact CCDFs are non-increasing; remove rounding wiggle
    curve.values.push_back(clipped);
    prev = clipped;
  }
  return curve;
}

RationalPgf RationalPgf::operator*(const RationalPgf& o) const {
  return RationalPgf(num_ * o.num_, den_ * o.den_);
}

RationalPgf RationalPgf::operator+(const RationalPgf& o) const {
  return RationalPgf(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalPgf RationalPgf::operator-(const RationalPgf& o) const {
  return RationalPgf(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalPgf RationalPgf::scaled(double a) const { return RationalPgf(num_.scaled(a), den_); }

RationalPgf RationalPgf::add_constant(double a) const {
  return RationalPgf(num_ + den_.scaled(a), den_);
}

RationalPgf RationalPgf::shift_down() const {
  return RationalPgf(num_.shift_down(), den_);
}

RationalPgf RationalPgf::substitute_power(int n) const {
  return RationalPgf(num_.substitute_power(n), den_.substitute_power(n));
}

RationalPgf compose_affine_power(const RationalPgf& g, double a, double b, int n) {
  if (n < 1) throw ConfigError("compose_affine_power: n must be >= 1");
  // (a + b N/D)^n = (a D + b N)^n / D^n
  const Polynomial inner = g.den().scaled(a) + g.num().scaled(b);
  return RationalPgf(inner.pow(n), g.den().pow(n));
}

}  // namespace urllc
