#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "urllc/dual2.hpp"
#include "urllc/polynomial.hpp"
#include "urllc/tail_curve.hpp"

namespace urllc {

// Optional numerically-stable companions to the flat rational representation.
// High-degree constructions (the steady-state delay PGFs) attach these so that
// pointwise evaluation and tail extraction do not go through ill-conditioned
// expanded coefficients; everything else uses the flat form directly.
struct StablePgfForm {
  // G(s) with first and second derivatives.
  std::function<Dual2(Dual2)> eval;
  // P[X > k] for k = 0..k_max via well-conditioned series arithmetic.
  std::function<std::vector<double>(int)> ccdf_series;
};

// Probability generating function G(s) = num(s)/den(s).
// Invariants: G(1) = 1 within 1e-9, den(0) != 0.
class RationalPgf {
public:
  RationalPgf() : num_({0.0, 1.0}), den_({1.0}) {}
  RationalPgf(Polynomial num, Polynomial den);

  // Finite-support PMF over {0, 1, ...}: G(s) = sum_k pmf[k] s^k.
  static RationalPgf from_pmf(const std::vector<double>& pmf);
  // Geometric on {1, 2, ...}: (1-fail)s / (1 - fail*s).
  static RationalPgf geometric(double fail);
  static RationalPgf point_mass(int k);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  // num(s)/den(s); throws NumericalError when |den(s)| < 1e-14 * scale.
  double eval(double s) const;

  // (G, G', G'') at s, via the stable form when attached.
  void eval_with_derivatives(double s, double& g0, double& g1, double& g2) const;

  // E[X] = G'(1), analytic quotient rule with L'Hopital fallback when both
  // num and den vanish at 1. Throws NumericalError for a divergent mean.
  double mean() const;

  // Appendix-style coefficient recursion on (1 - G(s))/(1 - s).
  // Returns P[X > k], k = 0..k_max. Uses the stable series when attached.
  TailCurve invert_ccdf(int k_max) const;

  // true iff the denominator is (numerically) constant, i.e. finite support.
  bool finite_support() const;
  int min_support() const { return num_.min_power(); }
  // Only valid when finite_support(): largest support point.
  int max_support() const { return num_.degree(); }
  // P[X = k] read directly from the rational form (exact for k at the
  // support edges).
  double pmf_edge(int k) const;

  bool has_stable_form() const { return static_cast<bool>(stable_); }
  const StablePgfForm* stable_form() const { return stable_.get(); }
  void attach_stable_form(StablePgfForm form);

  // |G(1) - 1| <= tol, evaluated safely.
  bool is_normalized(double tol = 1e-9) const;

  RationalPgf operator*(const RationalPgf& o) const;
  RationalPgf operator+(const RationalPgf& o) const;
  RationalPgf operator-(const RationalPgf& o) const;
  RationalPgf scaled(double a) const;
  RationalPgf add_constant(double a) const;
  // G(s)/s (support shift down by one).
  RationalPgf shift_down() const;
  // G(s^n).
  RationalPgf substitute_power(int n) const;

private:
  Polynomial num_, den_;
  std::shared_ptr<const StablePgfForm> stable_;
};

// (a + b G(s))^n, expanded by repeated squaring.
RationalPgf compose_affine_power(const RationalPgf& g, double a, double b, int n);

}  // namespace urllc
