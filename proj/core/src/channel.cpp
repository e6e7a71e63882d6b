#include "urllc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "urllc/errors.hpp"
#include "urllc/numerics.hpp"
#include "urllc/parallel.hpp"
#include "urllc/special_functions.hpp"

namespace urllc {

namespace {
constexpr double kLn2 = 0.6931471805599453094;
constexpr double kLn2Pi = 1.8378770664093454836;
}  // namespace

double sample_info_density(const ChannelSpec& spec, int t_frames, RngStream& rng) {
  if (t_frames < 1) throw ConfigError("sample_info_density: t_frames must be >= 1");
  const double a = std::sqrt(spec.rho);
  const long long total = static_cast<long long>(spec.n) * t_frames;
  double acc = 0.0;
  for (long long i = 0; i < total; ++i) {
    const double x = rng.bernoulli(0.5) ? a : -a;
    const double y = x + rng.normal();
    if (spec.rho == 0.0) continue;  // i(x;y) = 0 symbol-wise at zero SNR
    acc += kLn2 - softplus(-2.0 * x * y);
  }
  return acc;
}

double sample_generalized_info_density(const ChannelSpec& spec, double alpha, RngStream& rng) {
  if (alpha <= 0.0) throw ConfigError("sample_generalized_info_density: alpha must be > 0");
  const double a = std::sqrt(spec.rho);
  double acc = 0.0;
  for (int i = 0; i < spec.n; ++i) {
    const double x = rng.bernoulli(0.5) ? a : -a;
    const double y = x + rng.normal();
    if (spec.rho == 0.0) continue;
    const double e0 = -0.5 * alpha * (y - a) * (y - a);
    const double e1 = -0.5 * alpha * (y + a) * (y + a);
    // alpha log P(y|x) - log( 0.5 (2 pi)^{-alpha/2} (e^{e0} + e^{e1}) )
    acc += -0.5 * alpha * (y - x) * (y - x) + kLn2 - log_sum_exp(e0, e1);
  }
  return acc;
}

double log_m_minus_one(int k_bits) {
  if (k_bits < 1) throw ConfigError("log_m_minus_one: k_bits must be >= 1");
  return k_bits * kLn2 + std::log1p(-std::exp2(-static_cast<double>(k_bits)));
}

namespace {

// One full Monte Carlo pass: for each alpha in `alphas`, the mean and variance
// of exp(-[i_alpha - log(2^k-1)]^+) over `samples` draws with per-sample
// substreams. Chunked, merged in chunk order: bit-stable under any thread count.
struct PassResult {
  std::vector<double> mean, var;
};

PassResult rcus_pass(const ChannelSpec& spec, int k_bits, const std::vector<double>& alphas,
                     std::uint64_t samples, std::uint64_t seed) {
  const double log_m1 = log_m_minus_one(k_bits);
  const double a = std::sqrt(spec.rho);
  const std::size_t na = alphas.size();
  const std::uint64_t n_chunks = (samples + kMcChunk - 1) / kMcChunk;
  std::vector<std::vector<double>> sum(n_chunks), sumsq(n_chunks);
  parallel_chunks(samples, kMcChunk, [&](std::uint64_t c, std::uint64_t b, std::uint64_t e) {
    std::vector<double> s(na, 0.0), s2(na, 0.0), dens(na);
    std::vector<double> ya(static_cast<std::size_t>(spec.n)), xa(static_cast<std::size_t>(spec.n));
    for (std::uint64_t i = b; i < e; ++i) {
      RngStream rng(seed, i);
      for (int j = 0; j < spec.n; ++j) {
        const double x = rng.bernoulli(0.5) ? a : -a;
        xa[static_cast<std::size_t>(j)] = x;
        ya[static_cast<std::size_t>(j)] = x + rng.normal();
      }
      std::fill(dens.begin(), dens.end(), 0.0);
      if (spec.rho != 0.0) {
        for (int j = 0; j < spec.n; ++j) {
          const double x = xa[static_cast<std::size_t>(j)];
          const double y = ya[static_cast<std::size_t>(j)];
          const double d0 = (y - a) * (y - a);
          const double d1 = (y + a) * (y + a);
          const double dx = (y - x) * (y - x);
          for (std::size_t q = 0; q < na; ++q) {
            const double al = alphas[q];
            dens[q] += -0.5 * al * dx + kLn2 - log_sum_exp(-0.5 * al * d0, -0.5 * al * d1);
          }
        }
      }
      for (std::size_t q = 0; q < na; ++q) {
        const double excess = dens[q] - log_m1;
        const double v = excess > 0.0 ? std::exp(-excess) : 1.0;
        s[q] += v;
        s2[q] += v * v;
      }
    }
    sum[c] = std::move(s);
    sumsq[c] = std::move(s2);
  });
  PassResult r;
  r.mean.assign(na, 0.0);
  r.var.assign(na, 0.0);
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    for (std::size_t q = 0; q < na; ++q) {
      r.mean[q] += sum[c][q];
      r.var[q] += sumsq[c][q];
    }
  }
  const double inv_n = 1.0 / static_cast<double>(samples);
  for (std::size_t q = 0; q < na; ++q) {
    const double m = r.mean[q] * inv_n;
    r.mean[q] = m;
    r.var[q] = std::max(0.0, r.var[q] * inv_n - m * m);
  }
  return r;
}

}  // namespace

std::vector<double> default_alpha_grid() {
  return {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
}

McEstimate rcus_epsilon(const ChannelSpec& spec, int k_bits,
                        const std::vector<double>& alpha_candidates, std::uint64_t samples,
                        std::uint64_t seed) {
  if (k_bits < 1) throw ConfigError("rcus_epsilon: k_bits must be >= 1");
  if (samples < 1) throw ConfigError("rcus_epsilon: samples must be >= 1");
  if (alpha_candidates.empty()) throw ConfigError("rcus_epsilon: empty alpha grid");
  for (double al : alpha_candidates) {
    if (!(al > 0.0)) throw ConfigError("rcus_epsilon: alpha candidates must be > 0");
  }
  std::vector<double> grid = alpha_candidates;
  std::sort(grid.begin(), grid.end());
  const PassResult coarse = rcus_pass(spec, k_bits, grid, samples, seed);
  std::size_t best = 0;
  for (std::size_t q = 1; q < grid.size(); ++q) {
    if (coarse.mean[q] < coarse.mean[best]) best = q;
  }
  double best_alpha = grid[best];
  double best_mean = coarse.mean[best];
  double best_var = coarse.var[best];
  if (grid.size() > 1) {
    // Golden-section between the grid neighbours of the best point,
    // each probe a full common-random-number pass.
    const double lo = grid[best > 0 ? best - 1 : 0];
    const double hi = grid[std::min(best + 1, grid.size() - 1)];
    if (hi > lo) {
      static const double gr = 0.6180339887498948482;
      double a0 = lo, b0 = hi;
      double c = b0 - gr * (b0 - a0), d = a0 + gr * (b0 - a0);
      auto probe = [&](double al) {
        const PassResult r = rcus_pass(spec, k_bits, {al}, samples, seed);
        if (r.mean[0] < best_mean) {
          best_mean = r.mean[0];
          best_var = r.var[0];
          best_alpha = al;
        }
        return r.mean[0];
      };
      double fc = probe(c), fd = probe(d);
      for (int it = 0; it < 10; ++it) {
        // The objective is flat near its minimum; once the bracket spread is
        // well below the Monte Carlo uncertainty further probes are noise.
        const double noise = std::sqrt(best_var / static_cast<double>(samples));
        if (std::abs(fc - fd) < 0.05 * noise) break;
        if (fc < fd) {
          b0 = d;
          d = c;
          fd = fc;
          c = b0 - gr * (b0 - a0);
          fc = probe(c);
        } else {
          a0 = c;
          c = d;
          fc = fd;
          d = a0 + gr * (b0 - a0);
          fd = probe(d);
        }
      }
    }
  }
  McEstimate est;
  est.value = best_mean;
  est.half_width = 1.959963984540054 * std::sqrt(best_var / static_cast<double>(samples));
  est.samples = samples;
  est.seed = seed;
  est.alpha_star = best_alpha;
  return est;
}

ServiceModel arq_service_model(double eps_frame) {
  if (eps_frame < 0.0 || eps_frame >= 1.0) {
    throw ConfigError("arq_service_model: eps_frame must be in [0,1)");
  }
  return ServiceModel::geometric(eps_frame, 0.0);
}

}  // namespace urllc
