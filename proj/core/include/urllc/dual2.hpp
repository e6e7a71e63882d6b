#pragma once

namespace urllc {

// Truncated second-order Taylor arithmetic: carries (f, f', f'') through a
// computation, giving analytic first and second derivatives of closed-form
// expressions without expanding them into (possibly ill-conditioned)
// monomial-basis polynomials.
struct Dual2 {
  double v = 0.0;   // value
  double d1 = 0.0;  // first derivative
  double d2 = 0.0;  // second derivative

  constexpr Dual2() = default;
  constexpr Dual2(double value, double first = 0.0, double second = 0.0)
      : v(value), d1(first), d2(second) {}

  static constexpr Dual2 variable(double s) { return Dual2(s, 1.0, 0.0); }

  friend constexpr Dual2 operator+(const Dual2& a, const Dual2& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
  }
  friend constexpr Dual2 operator-(const Dual2& a, const Dual2& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
  }
  friend constexpr Dual2 operator*(const Dual2& a, const Dual2& b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
  }
  friend constexpr Dual2 operator/(const Dual2& a, const Dual2& b) {
    const double v = a.v / b.v;
    const double d1 = (a.d1 - v * b.d1) / b.v;
    const double d2 = (a.d2 - 2.0 * d1 * b.d1 - v * b.d2) / b.v;
    return {v, d1, d2};
  }
  friend constexpr Dual2 operator+(double a, const Dual2& b) { return Dual2(a) + b; }
  friend constexpr Dual2 operator-(double a, const Dual2& b) { return Dual2(a) - b; }
  friend constexpr Dual2 operator*(double a, const Dual2& b) { return Dual2(a) * b; }
  friend constexpr Dual2 operator+(const Dual2& a, double b) { return a + Dual2(b); }
  friend constexpr Dual2 operator-(const Dual2& a, double b) { return a - Dual2(b); }
  friend constexpr Dual2 operator*(const Dual2& a, double b) { return a * Dual2(b); }
  friend constexpr Dual2 operator/(const Dual2& a, double b) { return a / Dual2(b); }
  friend constexpr Dual2 operator/(double a, const Dual2& b) { return Dual2(a) / b; }

  Dual2 powi(int n) const {
    Dual2 result(1.0);
    Dual2 base = *this;
    while (n > 0) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n > 0) base = base * base;
    }
    return result;
  }
};

}  // namespace urllc
