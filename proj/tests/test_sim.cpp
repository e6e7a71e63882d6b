#include <doctest.h>

#include <cmath>

#include "urllc/age.hpp"
#include "urllc/sim.hpp"

using urllc::AgePolicy;
using urllc::QueueConfig;
using urllc::ServiceModel;
using urllc::SimReport;

TEST_SUITE("sim") {

TEST_CASE("same seed gives identical reports") {
  const ServiceModel s = ServiceModel::geometric(0.5);
  const QueueConfig q{10, 0.01};
  const SimReport a = urllc::simulate_fcfs_delay(s, q, 20000, 1000, 42, 30);
  const SimReport b = urllc::simulate_fcfs_delay(s, q, 20000, 1000, 42, 30);
  REQUIRE(a.ccdf.size() == b.ccdf.size());
  for (std::size_t i = 0; i < a.ccdf.size(); ++i) CHECK(a.ccdf[i] == b.ccdf[i]);
  const SimReport c = urllc::simulate_fcfs_delay(s, q, 20000, 1000, 43, 30);
  bool all_equal = true;
  for (std::size_t i = 0; i < a.ccdf.size(); ++i) all_equal &= (a.ccdf[i] == c.ccdf[i]);
  CHECK_FALSE(all_equal);
}

TEST_CASE("light traffic, deterministic service: queue almost always empty") {
  const ServiceModel s = ServiceModel::geometric(0.0);  // tau = 1
  const QueueConfig q{10, 1e-4};
  const SimReport r = urllc::simulate_fcfs_delay(s, q, 100000, 1000, 7, 10);
  CHECK(r.at(1) < 0.02);  // P[Delta > 1]
  CHECK(r.at(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("async light traffic: delay concentrates at n channel uses") {
  const ServiceModel s = ServiceModel::geometric(0.0);
  const QueueConfig q{5, 1e-4};
  const SimReport r = urllc::simulate_async_delay(s, q, 100000, 1000, 7, 10);
  CHECK(r.at(4) - r.at(5) > 0.99);  // P[Delta = 5]
  const SimReport r2 = urllc::simulate_async_delay(s, q, 100000, 1000, 7, 10);
  for (std::size_t i = 0; i < r.ccdf.size(); ++i) CHECK(r.ccdf[i] == r2.ccdf[i]);
}

TEST_CASE("warmup sensitivity: doubling warmup moves points by less than a standard error") {
  const ServiceModel s = ServiceModel::geometric(0.5);
  const QueueConfig q{10, 0.01};
  const SimReport a = urllc::simulate_fcfs_delay(s, q, 200000, 2000, 17, 25);
  const SimReport b = urllc::simulate_fcfs_delay(s, q, 200000, 4000, 17, 25);
  for (int k = 0; k <= 25; ++k) {
    const double se = std::max(a.se_at(k), 1e-9);
    CHECK(std::abs(a.at(k) - b.at(k)) < se);
  }
}

TEST_CASE("DWT with perfect detection matches the closed form") {
  // Pi = 2 + A, A ~ Geom(1-(1-lambda)^n): P[Pi > j] = qbar^{j-2} for j >= 2
  const ServiceModel s = ServiceModel::geometric(0.0);
  const QueueConfig q{10, 0.02};
  const double qbar = std::pow(1.0 - 0.02, 10);
  const SimReport r = urllc::simulate_peak_age(AgePolicy::kDwt, s, q, 200000, 2000, 3, 40);
  for (int j = 2; j <= 40; ++j) {
    const double p = std::pow(qbar, j - 2);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(r.count));
    CHECK(std::abs(r.at(j) - p) <= 3.0 * se + 3.0 / static_cast<double>(r.count));
  }
  CHECK(r.at(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("LCFS-S near saturation approaches the high-rate limit") {
  const ServiceModel s = ServiceModel::geometric(0.3);
  const QueueConfig q{5, 0.999999};
  const SimReport r = urllc::simulate_peak_age(AgePolicy::kLcfsS, s, q, 200000, 2000, 13, 30);
  for (int j = 2; j <= 12; ++j) {
    // P[Pi > j] at lambda -> 1: Pi = T + 1, so P[Pi > j] = eps^{j-1}
    const double p = std::pow(0.3, j - 1);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(r.count));
    CHECK(std::abs(r.at(j) - p) <= 3.0 * se + 3.0 / static_cast<double>(r.count));
  }
}

TEST_CASE("KTL dominates KTN pointwise (within noise)") {
  const ServiceModel s = ServiceModel::geometric(0.3);
  const QueueConfig q{10, 0.02};
  const SimReport ktn = urllc::simulate_peak_age(AgePolicy::kKtn, s, q, 300000, 3000, 23, 40);
  const SimReport ktl = urllc::simulate_peak_age(AgePolicy::kKtl, s, q, 300000, 3000, 29, 40);
  for (int j = 0; j <= 40; ++j) {
    const double slack = 3.0 * (ktn.se_at(j) + ktl.se_at(j)) + 3.0 / 300000.0;
    CHECK(ktl.at(j) <= ktn.at(j) + slack);
  }
}

TEST_CASE("simulation rejects bad configs") {
  const ServiceModel s = ServiceModel::geometric(0.5);
  CHECK_THROWS(urllc::simulate_fcfs_delay(s, QueueConfig{10, 0.2}, 1000, 0, 1, 10));
  CHECK_THROWS(urllc::simulate_peak_age(AgePolicy::kKtn, ServiceModel::empirical({1.0}, 0.0),
                                        QueueConfig{10, 0.01}, 1000, 0, 1, 10));
}

}  // TEST_SUITE
