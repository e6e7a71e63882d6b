#pragma once

#include "urllc/rational_pgf.hpp"

namespace urllc {

// Saddlepoint approximation of the lattice tail P[X >= d] from the cumulant
// generating function kappa(x) = log G(e^x).
//
// The tilting point theta = argmin_x kappa(x) - x d is located by
// golden-section over a safe window (1e-8, x_hi), where x_hi stops just short
// of the radius of convergence (geometric-grid walk + bisection). For
// d >= E[X] the continuity-corrected lattice tail
//     Q(w) + phi(w) (1/u1 - 1/w),  w = sqrt(2(theta d - kappa)),
//     u1 = (1 - e^{-theta}) sigma(theta)
// is returned (the B0 prefactor form is its w -> 0 limit and is used there);
// for d < E[X] the complement P[X >= d] = 1 - P[-X >= 1-d] is evaluated the
// same way on kappa_Y(x) = log G(e^{-x}). Support-edge cases short-circuit to
// the exact lattice atoms.
//
// Throws NumericalError when the exponential-moment window is empty or the
// tilting point cannot be bracketed.
double saddlepoint_ccdf(const RationalPgf& g, int d);

}  // namespace urllc
