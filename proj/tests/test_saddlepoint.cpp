#include <doctest.h>

#include <cmath>

#include "urllc/channel.hpp"
#include "urllc/errors.hpp"
#include "urllc/queueing.hpp"
#include "urllc/saddlepoint.hpp"
#include "urllc/special_functions.hpp"

using urllc::RationalPgf;

TEST_SUITE("pgf") {

TEST_CASE("B0 component identities") {
  CHECK(urllc::saddlepoint_b0(0.0) == 0.0);  // Q(0) = 1/2 and 0 * e^0 * 1/2 = 0
  // large-argument limit 1/sqrt(2 pi)
  CHECK(urllc::saddlepoint_b0(50.0) == doctest::Approx(0.3989422804).epsilon(1e-3));
  // erfcx continuity across the series switch at t = 15
  CHECK(urllc::erfcx(15.0 - 1e-10) == doctest::Approx(urllc::erfcx(15.0 + 1e-10)).epsilon(1e-9));
}

TEST_CASE("gaussian_q sanity") {
  CHECK(urllc::gaussian_q(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(urllc::gaussian_q(3.0) == doctest::Approx(1.349898e-3).epsilon(1e-5));
}

TEST_CASE("saddlepoint: geometric tail within 10% everywhere") {
  const RationalPgf g = RationalPgf::geometric(0.5);
  // spec anchor: d = 20 against the closed form 0.5^19
  CHECK(urllc::saddlepoint_ccdf(g, 20) ==
        doctest::Approx(std::pow(0.5, 19)).epsilon(0.10));
  for (int d = 1; d <= 30; ++d) {
    const double exact = std::pow(0.5, d - 1);  // P[X >= d]
    CHECK(urllc::saddlepoint_ccdf(g, d) == doctest::Approx(exact).epsilon(0.10));
  }
}

TEST_CASE("saddlepoint vs exact recursion on delay PGFs (10% where tail >= 1e-8)") {
  struct Cfg {
    int n;
    double lambda, eps;
  };
  const Cfg cfgs[] = {{5, 0.002, 0.1}, {10, 0.01, 0.5}, {20, 0.005, 0.3}, {100, 1e-3, 0.1}};
  for (const auto& c : cfgs) {
    const RationalPgf g =
        urllc::delay_pgf_sync(urllc::arq_service_model(c.eps), urllc::QueueConfig{c.n, c.lambda});
    const auto tails = g.invert_ccdf(34);
    for (int d = 1; d <= 35; ++d) {
      const double exact = tails.at(d - 1);
      if (exact < 1e-8) break;
      const double sp = urllc::saddlepoint_ccdf(g, d);
      CHECK(sp == doctest::Approx(exact).epsilon(0.10));
    }
  }
}

TEST_CASE("saddlepoint handles finite support exactly at the edges") {
  const RationalPgf g = urllc::RationalPgf::from_pmf({0.0, 0.25, 0.5, 0.25});
  CHECK(urllc::saddlepoint_ccdf(g, 0) == 1.0);
  CHECK(urllc::saddlepoint_ccdf(g, 1) == 1.0);
  CHECK(urllc::saddlepoint_ccdf(g, 3) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(urllc::saddlepoint_ccdf(g, 4) == 0.0);
}

TEST_CASE("saddlepoint: empty exponential-moment window raises") {
  // radius of convergence 1/1.2 < 1: no x > 0 with G(e^x) finite-positive
  const RationalPgf fake(urllc::Polynomial({0.0, -0.2}), urllc::Polynomial({1.0, -1.2}));
  CHECK_THROWS_AS(urllc::saddlepoint_ccdf(fake, 10), urllc::NumericalError);
}

}  // TEST_SUITE
