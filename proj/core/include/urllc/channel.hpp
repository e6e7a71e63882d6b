#pragma once

#include <cstdint>
#include <vector>

#include "urllc/rng.hpp"
#include "urllc/service_model.hpp"

namespace urllc {

// Binary-input AWGN channel: inputs +-sqrt(rho), unit-variance noise, so rho
// is the SNR on a linear scale; n is the frame size in channel uses.
struct ChannelSpec {
  double rho = 1.0;
  int n = 1;
};

struct McEstimate {
  double value = 0.0;
  double half_width = 0.0;  // 95% normal-approximation CI half-width
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double alpha_star = 0.0;  // filled by rcus_epsilon only
};

// Accumulated information density i(X^{nt}; Y^{nt}) over t frames:
// sum of log2 - log(1 + exp(-2 x y)) per symbol.
double sample_info_density(const ChannelSpec& spec, int t_frames, RngStream& rng);

// Generalized information density with parameter alpha over one frame:
// sum_k [ alpha log P(y_k|x_k) - log E_{Xbar} P(y_k|Xbar)^alpha ].
double sample_generalized_info_density(const ChannelSpec& spec, double alpha, RngStream& rng);

// RCUs achievability bound on the frame error probability:
// eps <= inf_alpha E[ exp(-[ i_alpha - log(2^k - 1) ]^+) ].
// The infimum is taken over alpha_candidates (common random numbers across
// alpha), then refined by golden-section between the two grid neighbours of
// the best point. Bit-reproducible for fixed (spec, k_bits, samples, seed)
// regardless of worker count.
McEstimate rcus_epsilon(const ChannelSpec& spec, int k_bits,
                        const std::vector<double>& alpha_candidates, std::uint64_t samples,
                        std::uint64_t seed);

// Default alpha grid {0.25, 0.5, ..., 2.0}.
std::vector<double> default_alpha_grid();

// Stop-and-repeat ARQ with perfect error detection: tau ~ Geom(1 - eps_frame),
// no undetected errors.
ServiceModel arq_service_model(double eps_frame);

// log(2^k - 1), stable for any k >= 1.
double log_m_minus_one(int k_bits);

}  // namespace urllc
