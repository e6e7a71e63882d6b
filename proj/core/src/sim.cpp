#include "urllc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "urllc/errors.hpp"
#include "urllc/queueing.hpp"

namespace urllc {

namespace {

SimReport finalize_report(const std::vector<std::uint64_t>& hist, std::uint64_t count,
                          std::uint64_t seed, std::string echo) {
  SimReport r;
  r.count = count;
  r.seed = seed;
  r.config_echo = std::move(echo);
  if (count == 0) return r;
  const int grid_max = static_cast<int>(hist.size()) - 2;  // last bin is overflow
  r.ccdf.resize(static_cast<std::size_t>(grid_max) + 1);
  r.std_err.resize(static_cast<std::size_t>(grid_max) + 1);
  std::uint64_t gt = 0;
  for (int k = grid_max; k >= 0; --k) {
    gt += hist[static_cast<std::size_t>(k) + 1];  // hist[i]: count of X == i; last bin: X > grid_max
    const double p = static_cast<double>(gt) / static_cast<double>(count);
    r.ccdf[static_cast<std::size_t>(k)] = p;
    r.std_err[static_cast<std::size_t>(k)] =
        std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(count));
  }
  return r;
}

// Conditional bulk size B | B >= 1, B ~ Binomial(n, lambda): inverse-CDF table.
class ConditionalBinomial {
public:
  ConditionalBinomial(int n, double lambda) {
    const double log_l = std::log(lambda);
    const double log_1ml = std::log1p(-lambda);
    const double log_u0 = std::log(-std::expm1(static_cast<double>(n) * log_1ml));
    double log_comb = 0.0;
    cdf_.reserve(static_cast<std::size_t>(n));
    double acc = 0.0;
    for (int b = 1; b <= n; ++b) {
      log_comb += std::log(static_cast<double>(n - b + 1)) - std::log(static_cast<double>(b));
      const double lp = log_comb + b * log_l + (n - b) * log_1ml - log_u0;
      acc += std::exp(lp);
      cdf_.push_back(std::min(acc, 1.0));
    }
    cdf_.back() = 1.0;
  }

  int sample(RngStream& rng) const {
    const double u = rng.uniform();
    for (std::size_t i = 0; i < cdf_.size(); ++i) {
      if (u < cdf_[i]) return static_cast<int>(i) + 1;
    }
    return static_cast<int>(cdf_.size());
  }

private:
  std::vector<double> cdf_;
};

void check_conservation(std::uint64_t offered, std::uint64_t departed, std::uint64_t in_system,
                        std::uint64_t discarded) {
  if (offered != departed + in_system + discarded) {
    throw NumericalError("simulation conservation check failed");
  }
}

}  // namespace

std::uint64_t default_warmup(std::uint64_t num_observations) {
  return std::max<std::uint64_t>(1000, num_observations / 10);
}

SimReport simulate_fcfs_delay(const ServiceModel& service, const QueueConfig& q,
                              std::uint64_t num_bulks, std::uint64_t warmup_bulks,
                              std::uint64_t seed, int grid_max) {
  check_stability(service, q);
  if (num_bulks < 1) throw ConfigError("simulate_fcfs_delay: num_bulks must be >= 1");
  if (grid_max < 0) throw ConfigError("simulate_fcfs_delay: grid_max must be >= 0");
  const double u0 = -std::expm1(static_cast<double>(q.n) * std::log1p(-q.lambda));
  const ConditionalBinomial bulk(q.n, q.lambda);
  RngStream rng(seed, 0);

  std::vector<std::uint64_t> hist(static_cast<std::size_t>(grid_max) + 2, 0);
  std::uint64_t recorded = 0, offered = 0, departed = 0;
  long long wait = 0;
  for (std::uint64_t m = 0; m < num_bulks + warmup_bulks; ++m) {
    const int b = bulk.sample(rng);
    offered += static_cast<std::uint64_t>(b);
    long long s = 0;
    for (int i = 0; i < b; ++i) s += service.sample(rng);
    const long long delay = wait + s;
    if (m >= warmup_bulks) {
      const long long bin = std::min<long long>(delay, grid_max + 1);
      ++hist[static_cast<std::size_t>(bin)];
      ++recorded;
    }
    departed += static_cast<std::uint64_t>(b);
    const long long gap = rng.geometric1(1.0 - u0);
    wait = std::max<long long>(0, wait + s - gap);
  }
  check_conservation(offered, departed, 0, 0);
  std::ostringstream echo;
  echo << "fcfs n=" << q.n << " lambda=" << q.lambda << " bulks=" << num_bulks
       << " warmup=" << warmup_bulks;
  SimReport r = finalize_report(hist, recorded, seed, echo.str());
  return r;
}

SimReport simulate_async_delay(const ServiceModel& service, const QueueConfig& q,
                               std::uint64_t num_packets, std::uint64_t warmup_packets,
                               std::uint64_t seed, int grid_max) {
  check_stability(service, q);
  if (num_packets < 1) throw ConfigError("simulate_async_delay: num_packets must be >= 1");
  RngStream rng(seed, 1);

  std::vector<std::uint64_t> hist(static_cast<std::size_t>(grid_max) + 2, 0);
  std::uint64_t recorded = 0;
  long long wait = 0;
  for (std::uint64_t m = 0; m < num_packets + warmup_packets; ++m) {
    const long long s = static_cast<long long>(q.n) * service.sample(rng);
    const long long delay = wait + s;
    if (m >= warmup_packets) {
      const long long bin = std::min<long long>(delay, grid_max + 1);
      ++hist[static_cast<std::size_t>(bin)];
      ++recorded;
    }
    const long long gap = rng.geometric1(1.0 - q.lambda);
    wait = std::max<long long>(0, wait + s - gap);
  }
  check_conservation(num_packets + warmup_packets, num_packets + warmup_packets, 0, 0);
  std::ostringstream echo;
  echo << "async n=" << q.n << " lambda=" << q.lambda << " packets=" << num_packets
       << " warmup=" << warmup_packets;
  return finalize_report(hist, recorded, seed, echo.str());
}

SimReport simulate_peak_age(AgePolicy policy, const ServiceModel& service, const QueueConfig& q,
                            std::uint64_t num_departures, std::uint64_t warmup_departures,
                            std::uint64_t seed, int grid_max) {
  if (q.n < 1) throw ConfigError("simulate_peak_age: n must be >= 1");
  if (!(q.lambda > 0.0) || !(q.lambda < 1.0)) {
    throw ConfigError("simulate_peak_age: lambda must lie strictly in (0,1)");
  }
  if (num_departures < 1) throw ConfigError("simulate_peak_age: num_departures must be >= 1");
  const bool needs_geometric = policy != AgePolicy::kDwt;
  if (needs_geometric && !service.is_geometric()) {
    throw ConfigError("simulate_peak_age: KTN/KTL/LCFS-S require geometric service");
  }
  const double u0 = -std::expm1(static_cast<double>(q.n) * std::log1p(-q.lambda));
  const double eps = service.is_geometric() ? service.eps_frame() : 0.0;
  RngStream rng(seed, 2);

  std::vector<std::uint64_t> hist(static_cast<std::size_t>(grid_max) + 2, 0);
  std::uint64_t recorded = 0, offered = 0, departed = 0, discarded = 0;
  long long t = 0;
  long long last_z = -1;
  bool have_last = false;

  if (policy == AgePolicy::kDwt) {
    bool serving = false;
    long long cur_z = 0, remaining = 0;
    while (recorded < num_departures) {
      ++t;
      const bool busy_at_start = serving;
      if (serving && --remaining == 0) {
        ++departed;
        if (have_last && departed > warmup_departures && recorded < num_departures) {
          const long long peak = t - last_z;
          ++hist[static_cast<std::size_t>(std::min<long long>(peak, grid_max + 1))];
          ++recorded;
        }
        last_z = cur_z;
        have_last = true;
        serving = false;
      }
      if (rng.bernoulli(u0)) {
        ++offered;
        if (busy_at_start) {
          ++discarded;
        } else {
          serving = true;
          cur_z = t;
          remaining = service.sample(rng);
        }
      }
    }
    check_conservation(offered, departed, serving ? 1 : 0, discarded);
  } else {
    // The queue slot belongs to the tenure of the packet in service: KTN keeps
    // the first arrival of the tenure, KTL the last. An arrival landing in the
    // departure frame still falls in the departing packet's tenure, so under
    // KTL it wins the slot and is promoted (the older queued packet is
    // replaced); under KTN the slot was already spoken for and it is dropped.
    // A new tenure always starts with an empty queue slot.
    int size = 0;
    long long front_z = 0, queued_z = 0;
    while (recorded < num_departures) {
      ++t;
      bool ack = false;
      if (size >= 1) ack = rng.bernoulli(1.0 - eps);
      bool arr = rng.bernoulli(u0);
      if (arr) ++offered;
      if (ack) {
        ++departed;
        const bool fresh = !have_last || front_z > last_z;
        if (fresh && have_last && departed > warmup_departures && recorded < num_departures) {
          const long long peak = t - last_z;
          ++hist[static_cast<std::size_t>(std::min<long long>(peak, grid_max + 1))];
          ++recorded;
        }
        if (fresh) last_z = front_z;
        have_last = true;
        if (size == 1) {
          size = 0;
          if (arr) {  // empty system: straight to service
            front_z = t;
            size = 1;
            arr = false;
          }
        } else {
          if (arr) {
            if (policy == AgePolicy::kKtl) {
              ++discarded;  // the queued packet loses the slot to the later arrival
              front_z = t;
            } else {
              ++discarded;  // KTN: arrival between tenures is dropped
              front_z = queued_z;
            }
            arr = false;
          } else {
            front_z = queued_z;
          }
          size = 1;
        }
      }
      if (arr) {
        if (size == 0) {
          front_z = t;
          size = 1;
        } else if (policy == AgePolicy::kLcfsS) {
          // preempt: the in-service packet is dropped, the new one starts next frame
          ++discarded;
          front_z = t;
        } else if (size == 1) {
          queued_z = t;
          size = 2;
        } else if (policy == AgePolicy::kKtl) {
          ++discarded;  // keep the last arrival: replace the queued packet
          queued_z = t;
        } else {
          ++discarded;  // KTN keeps the first arrival: reject the new one
        }
      }
    }
    check_conservation(offered, departed, static_cast<std::uint64_t>(size), discarded);
  }
  std::ostringstream echo;
  echo << "age policy=" << static_cast<int>(policy) << " n=" << q.n << " lambda=" << q.lambda
       << " eps=" << eps << " departures=" << num_departures << " warmup=" << warmup_departures;
  return finalize_report(hist, recorded, seed, echo.str());
}

}  // namespace urllc
