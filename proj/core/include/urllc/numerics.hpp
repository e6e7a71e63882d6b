#pragma once

#include <cmath>
#include <utility>

namespace urllc {

// Golden-section minimization of a unimodal f on [a, b].
template <typename F>
double golden_section_min(F&& f, double a, double b, double tol = 1e-12, int max_iter = 200) {
  static const double gr = 0.6180339887498948482;  // (sqrt 5 - 1)/2
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > tol * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Bisection for a sign change of f on [a, b]; requires f(a) and f(b) of
// opposite sign (or zero). Returns the midpoint of the final bracket.
template <typename F>
double bisect_root(F&& f, double a, double b, double tol = 1e-12, int max_iter = 200) {
  double fa = f(a);
  for (int i = 0; i < max_iter && (b - a) > tol * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fa <= 0.0 && fm <= 0.0) || (fa >= 0.0 && fm >= 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Bisection on a boolean predicate that is true on [a, x*) and false beyond;
// returns the largest known-true point.
template <typename P>
double bisect_boundary(P&& ok, double a, double b, int iters = 80) {
  for (int i = 0; i < iters; ++i) {
    const double m = 0.5 * (a + b);
    if (ok(m)) {
      a = m;
    } else {
      b = m;
    }
  }
  return a;
}

inline int ceil_div(long long num, long long den) {
  return static_cast<int>((num + den - 1) / den);
}

}  // namespace urllc
