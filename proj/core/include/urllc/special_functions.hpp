#pragma once

namespace urllc {

// Gaussian upper tail Q(x) = P[N(0,1) >= x].
double gaussian_q(double x);

// Standard normal density.
double gaussian_phi(double x);

// Scaled complementary error function erfcx(t) = exp(t^2) erfc(t), t >= 0.
// Direct for small t, asymptotic series beyond the exp-overflow range.
double erfcx(double t);

// B0(x) = x exp(x^2/2) Q(x), the lattice saddlepoint prefactor.
// B0(0) = 0; B0(x) -> 1/sqrt(2 pi) as x -> inf.
double saddlepoint_b0(double x);

// log(1 + e^t) without overflow.
double softplus(double t);

// log(e^a + e^b) without overflow.
double log_sum_exp(double a, double b);

}  // namespace urllc
