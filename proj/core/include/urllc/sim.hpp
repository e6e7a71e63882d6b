#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "urllc/age.hpp"
#include "urllc/queueing_types.hpp"
#include "urllc/service_model.hpp"

namespace urllc {

// Empirical CCDF with binomial standard errors sqrt(p(1-p)/N).
struct SimReport {
  int start_index = 0;
  std::vector<double> ccdf;     // P[X > k], k = 0..grid_max
  std::vector<double> std_err;  // per-point standard error
  std::uint64_t count = 0;      // recorded observations (after warmup)
  std::uint64_t seed = 0;
  std::string config_echo;

  double at(int k) const {
    if (k < start_index) return 1.0;
    const std::size_t i = static_cast<std::size_t>(k - start_index);
    return i < ccdf.size() ? ccdf[i] : 0.0;
  }
  double se_at(int k) const {
    if (k < start_index) return 0.0;
    const std::size_t i = static_cast<std::size_t>(k - start_index);
    return i < std_err.size() ? std_err[i] : 0.0;
  }
};

// Frame-granular FCFS bulk queue: Binomial(n, lambda) bulks, i.i.d. per-packet
// service draws, bulk delay W + S in frames.
SimReport simulate_fcfs_delay(const ServiceModel& service, const QueueConfig& q,
                              std::uint64_t num_bulks, std::uint64_t warmup_bulks,
                              std::uint64_t seed, int grid_max);

// Channel-use-granular FCFS queue (one packet per arrival): delay in channel
// uses; a packet arriving to an empty buffer starts on the next channel use.
SimReport simulate_async_delay(const ServiceModel& service, const QueueConfig& q,
                               std::uint64_t num_packets, std::uint64_t warmup_packets,
                               std::uint64_t seed, int grid_max);

// Frame-granular peak-age simulation of the chosen packet-management policy
// (at most one admitted packet per frame); records the age just before each
// delivered update.
SimReport simulate_peak_age(AgePolicy policy, const ServiceModel& service, const QueueConfig& q,
                            std::uint64_t num_departures, std::uint64_t warmup_departures,
                            std::uint64_t seed, int grid_max);

// Default burn-in: 10% of the run, at least 1000 observations.
std::uint64_t default_warmup(std::uint64_t num_observations);

}  // namespace urllc
