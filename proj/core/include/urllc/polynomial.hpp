#pragma once

#include <initializer_list>
#include <vector>

namespace urllc {

// Real polynomial in the PGF argument s; coefficient index = power of s.
// Immutable in spirit: all operations return new values.
class Polynomial {
public:
  Polynomial() : c_{0.0} {}
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs);

  static Polynomial constant(double v) { return Polynomial({v}); }
  static Polynomial identity() { return Polynomial({0.0, 1.0}); }  // s

  const std::vector<double>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  double eval(double s) const;              // Horner
  Polynomial derivative() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(double a) const;

  // Integer power by repeated squaring. Throws NumericalError if any
  // coefficient magnitude exceeds 1e300.
  Polynomial pow(int n) const;

  // p(s) -> p(s^n): coefficient k moves to power k*n.
  Polynomial substitute_power(int n) const;

  // Divide by (s - 1) via synthetic division; requires p(1) ~ 0 relative to
  // the coefficient scale (throws NumericalError otherwise).
  Polynomial deflate_at_one() const;

  // Divide by s; requires a (relatively) vanishing constant term.
  Polynomial shift_down() const;

  // Largest |coefficient|.
  double max_abs_coeff() const;

  // Smallest power with a non-negligible coefficient (relative 1e-12 cutoff).
  int min_power() const;

private:
  void trim();
  std::vector<double> c_;
};

}  // namespace urllc
