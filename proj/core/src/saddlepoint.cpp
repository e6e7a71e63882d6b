#include "urllc/saddlepoint.hpp"

#include <cmath>
#include <optional>

#include "urllc/errors.hpp"
#include "urllc/numerics.hpp"
#include "urllc/special_functions.hpp"

namespace urllc {

namespace {

struct Cgf {
  double k;   // kappa
  double k1;  // kappa'
  double k2;  // kappa''
};

// kappa(x) = log G(e^{sign * x}); sign = +1 for the upper tail of X,
// sign = -1 for the upper tail of -X (complement branch).
std::optional<Cgf> cgf_at(const RationalPgf& g, double x, double sign) {
  const double s = std::exp(sign * x);
  double g0, g1, g2;
  try {
    g.eval_with_derivatives(s, g0, g1, g2);
  } catch (const NumericalError&) {
    return std::nullopt;
  }
  if (!std::isfinite(g0) || !std::isfinite(g1) || !std::isfinite(g2) || g0 <= 0.0) {
    return std::nullopt;
  }
  const double m = s * g1 / g0;  // d/dx log G(e^x) evaluated at s
  const double k2 = m + s * s * g2 / g0 - m * m;
  if (!std::isfinite(k2)) return std::nullopt;
  return Cgf{std::log(g0), sign * m, k2};
}

// Continuity-corrected lattice tail at tilting point theta for target y.
double lattice_tail(const Cgf& c, double theta, double y) {
  if (c.k2 <= 0.0) throw NumericalError("saddlepoint: non-positive kappa''");
  const double sigma = std::sqrt(c.k2);
  const double w2 = 2.0 * (theta * y - c.k);
  if (w2 < 1e-12) {
    // w -> 0 limit (y at the tilted mean): B0 prefactor form.
    return saddlepoint_b0(theta * sigma) / (sigma * (1.0 - std::exp(-theta))) *
           std::exp(c.k - theta * y);
  }
  const double w = std::sqrt(w2);
  const double u1 = -std::expm1(-theta) * sigma;
  return gaussian_q(w) + gaussian_phi(w) * (1.0 / u1 - 1.0 / w);
}

// Upper tail of the lattice variable whose CGF is x -> cgf_at(g, x, sign),
// at target y (> tilted mean at x=0).
double tilted_tail(const RationalPgf& g, double sign, double y) {
  constexpr double x_lo = 1e-8;
  constexpr double x_cap = 50.0;
  auto at = [&](double x) { return cgf_at(g, x, sign); };
  if (!at(x_lo)) {
    throw NumericalError("saddlepoint: exponential-moment window empty");
  }
  // Geometric-grid walk: stop where evaluation fails (radius reached) or the
  // tilted mean passes y (tilting point bracketed).
  double x = 1e-6;
  bool bracketed = false;
  while (x < x_cap) {
    const double nx = std::min(x * 1.5, x_cap);
    const auto c = at(nx);
    if (!c) break;
    x = nx;
    if (c->k1 >= y) {
      bracketed = true;
      break;
    }
  }
  double x_hi = x;
  if (!bracketed && x < x_cap) {
    // Refine the window boundary, then back off slightly.
    const double b = bisect_boundary([&](double xx) { return at(xx).has_value(); }, x,
                                     std::min(x * 1.5, x_cap));
    x_hi = std::max(x_lo * 2.0, b - 1e-6 * (1.0 + b));
    const auto c = at(x_hi);
    if (c && c->k1 >= y) bracketed = true;
  }
  if (!bracketed) {
    const auto c = at(x_hi);
    if (!c || c->k1 < y) {
      throw NumericalError("saddlepoint: failed to bracket the tilting point");
    }
  }
  const double theta = golden_section_min(
      [&](double xx) {
        const auto c = at(xx);
        return c ? (c->k - xx * y) : 1e300;
      },
      x_lo, x_hi, 1e-12);
  const auto c = at(theta);
  if (!c) throw NumericalError("saddlepoint: evaluation failed at the tilting point");
  return lattice_tail(*c, theta, y);
}

}  // namespace

double saddlepoint_ccdf(const RationalPgf& g, int d) {
  const int ms = g.min_support();
  if (d <= ms) return 1.0;
  if (g.finite_support()) {
    const int Ms = g.max_support();
    if (d > Ms) return 0.0;
    if (d == Ms) return std::min(1.0, std::max(0.0, g.pmf_edge(Ms)));
  }
  const double mean = g.mean();
  if (static_cast<double>(d) >= mean) {
    const double v = tilted_tail(g, +1.0, static_cast<double>(d));
    return std::min(1.0, std::max(0.0, v));
  }
  // Complement: P[X >= d] = 1 - P[X <= d-1] = 1 - P[-X >= 1-d].
  if (d - 1 == ms) {
    return std::min(1.0, std::max(0.0, 1.0 - g.pmf_edge(ms)));
  }
  const double v = tilted_tail(g, -1.0, static_cast<double>(1 - d));
  return std::min(1.0, std::max(0.0, 1.0 - v));
}

}  // namespace urllc
