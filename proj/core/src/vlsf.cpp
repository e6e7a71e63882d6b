#include "urllc/vlsf.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "urllc/errors.hpp"
#include "urllc/parallel.hpp"
#include "urllc/queueing.hpp"
#include "urllc/special_functions.hpp"

namespace urllc {

namespace {
constexpr double kLn2 = 0.6931471805599453094;
}

VlsfBoundResult simulate_threshold_crossing(const ChannelSpec& spec, int k_bits, double gamma,
                                            int ell_max, std::uint64_t samples,
                                            std::uint64_t seed) {
  if (!(gamma > 0.0)) throw ConfigError("simulate_threshold_crossing: gamma must be > 0");
  if (ell_max < 1) throw ConfigError("simulate_threshold_crossing: ell_max must be >= 1");
  if (samples < 1) throw ConfigError("simulate_threshold_crossing: samples must be >= 1");
  if (k_bits < 1) throw ConfigError("simulate_threshold_crossing: k_bits must be >= 1");

  const double a = std::sqrt(spec.rho);
  const std::uint64_t n_chunks = (samples + kMcChunk - 1) / kMcChunk;
  // Per chunk: histogram of min(ell_max, tau_hat), count of {tau_hat >= ell_max+1},
  // count of the undetected event {tau_bar <= min(ell_max, tau_hat)}.
  std::vector<std::vector<std::uint64_t>> stop_hist(n_chunks);
  std::vector<std::uint64_t> detected(n_chunks, 0), undetected(n_chunks, 0);

  parallel_chunks(samples, kMcChunk, [&](std::uint64_t c, std::uint64_t b, std::uint64_t e) {
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(ell_max) + 1, 0);
    std::uint64_t det = 0, undet = 0;
    for (std::uint64_t i = b; i < e; ++i) {
      RngStream rng(seed, i);
      double walk_true = 0.0, walk_aux = 0.0;
      bool aux_crossed = false;
      int stop = ell_max;  // min(ell_max, tau_hat)
      bool true_crossed = false;
      for (int t = 1; t <= ell_max; ++t) {
        for (int j = 0; j < spec.n; ++j) {
          const double z = rng.normal();
          const double x = rng.bernoulli(0.5) ? a : -a;
          const double xb = rng.bernoulli(0.5) ? a : -a;
          const double y = x + z;
          if (spec.rho != 0.0) {
            walk_true += kLn2 - softplus(-2.0 * x * y);
            walk_aux += kLn2 - softplus(-2.0 * xb * y);
          }
        }
        if (!aux_crossed && walk_aux >= gamma) aux_crossed = true;
        if (walk_true >= gamma) {
          stop = t;
          true_crossed = true;
          break;
        }
      }
      ++hist[static_cast<std::size_t>(stop)];
      if (!true_crossed) ++det;
      if (aux_crossed) ++undet;
    }
    stop_hist[c] = std::move(hist);
    detected[c] = det;
    undetected[c] = undet;
  });

  std::vector<std::uint64_t> hist(static_cast<std::size_t>(ell_max) + 1, 0);
  std::uint64_t det = 0, undet = 0;
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    for (std::size_t t = 0; t < hist.size(); ++t) hist[t] += stop_hist[c][t];
    det += detected[c];
    undet += undetected[c];
  }

  const double inv_n = 1.0 / static_cast<double>(samples);
  auto estimate = [&](double count) {
    McEstimate est;
    est.value = count * inv_n;
    est.half_width =
        1.959963984540054 * std::sqrt(std::max(0.0, est.value * (1.0 - est.value)) * inv_n);
    est.samples = samples;
    est.seed = seed;
    return est;
  };

  VlsfBoundResult r;
  r.gamma = gamma;
  r.ell_max = ell_max;
  r.k_bits = k_bits;
  r.spec = spec;
  r.tau_tail.reserve(static_cast<std::size_t>(ell_max));
  std::uint64_t ge = samples;  // P[min(ell_max, tau_hat) >= 1] = 1
  for (int t = 1; t <= ell_max; ++t) {
    r.tau_tail.push_back(estimate(static_cast<double>(ge)));
    ge -= hist[static_cast<std::size_t>(t)];
  }
  r.eps_detected_term = estimate(static_cast<double>(det));
  // (2^k - 1) * P[tau_bar <= min(ell_max, tau_hat)], clipped to 1
  McEstimate ub = estimate(static_cast<double>(undet));
  const double mult = std::exp(log_m_minus_one(k_bits));
  ub.half_width = std::min(1.0, ub.half_width * mult);
  ub.value = std::min(1.0, ub.value * mult);
  r.eps_undetected_bound = ub;
  return r;
}

ServiceModel vlsf_service_model(const VlsfBoundResult& result) {
  const std::size_t ell = result.tau_tail.size();
  if (ell == 0) throw ConfigError("vlsf_service_model: empty tau_tail");
  std::vector<double> pmf(ell, 0.0);
  for (std::size_t t = 0; t + 1 < ell; ++t) {
    pmf[t] = result.tau_tail[t].value - result.tau_tail[t + 1].value;
  }
  pmf[ell - 1] = result.tau_tail[ell - 1].value;  // residual mass absorbed at ell_max
  double sum = 0.0;
  for (double p : pmf) sum += p;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw NumericalError("vlsf_service_model: pmf normalization failure");
  }
  const double eps_u =
      std::min(1.0, result.eps_undetected_bound.value + result.eps_detected_term.value);
  return ServiceModel::empirical(std::move(pmf), eps_u);
}

GammaSweepResult optimize_gamma(const ChannelSpec& spec, int k_bits, const QueueConfig& queue,
                                int d0, const std::vector<double>& gamma_grid, int ell_max,
                                std::uint64_t samples, std::uint64_t seed) {
  if (gamma_grid.empty()) throw ConfigError("optimize_gamma: empty gamma grid");
  GammaSweepResult sweep;
  sweep.curve.reserve(gamma_grid.size());
  double best = 2.0;
  for (double gamma : gamma_grid) {
    GammaPoint pt;
    pt.gamma = gamma;
    const VlsfBoundResult b = simulate_threshold_crossing(spec, k_bits, gamma, ell_max, samples, seed);
    const ServiceModel service = vlsf_service_model(b);
    pt.eps_u = service.eps_undetected();
    if (traffic_intensity(service, queue) < 1.0) {
      pt.feasible = true;
      const RationalPgf g = delay_pgf_sync(service, queue);
      const DelayAnalysis a = delay_violation(g, d0, queue, service.eps_undetected(),
                                              TailEvalMethod::kExact);
      pt.p_delay = a.p_delay;
      pt.p_dv = a.p_dv;
      if (pt.p_dv < best) {
        best = pt.p_dv;
        sweep.gamma_star = gamma;
      }
    }
    sweep.curve.push_back(pt);
  }
  if (best > 1.5) {
    throw InfeasibleError("optimize_gamma: no feasible gamma in the grid (stability fails)");
  }
  return sweep;
}

std::vector<double> default_gamma_grid(int k_bits, int points) {
  if (points < 1) throw ConfigError("default_gamma_grid: points must be >= 1");
  const double lo = 0.25 * k_bits * kLn2;
  const double hi = 4.0 * k_bits * kLn2;
  std::vector<double> g(static_cast<std::size_t>(points));
  if (points == 1) {
    g[0] = lo;
    return g;
  }
  const double step = (std::log(hi) - std::log(lo)) / (points - 1);
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = std::exp(std::log(lo) + i * step);
  return g;
}

}  // namespace urllc
