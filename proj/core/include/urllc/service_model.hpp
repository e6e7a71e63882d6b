#pragma once

#include <variant>
#include <vector>

#include "urllc/rational_pgf.hpp"
#include "urllc/rng.hpp"

namespace urllc {

// Per-packet stopping time tau (in frames) plus the undetected-error
// probability carried alongside for the union-bound accounting.
class ServiceModel {
public:
  struct Geometric {
    double eps_frame;  // per-frame NACK probability; tau ~ Geom(1 - eps)
  };
  struct Empirical {
    std::vector<double> pmf;  // pmf[i] = P[tau = i + 1]; residual mass folded into the top bin
  };

  static ServiceModel geometric(double eps_frame, double eps_undetected = 0.0);
  static ServiceModel empirical(std::vector<double> pmf, double eps_undetected);

  bool is_geometric() const { return std::holds_alternative<Geometric>(law_); }
  double eps_frame() const { return std::get<Geometric>(law_).eps_frame; }
  const std::vector<double>& pmf() const { return std::get<Empirical>(law_).pmf; }

  double eps_undetected() const { return eps_undetected_; }

  double mean() const;
  RationalPgf pgf() const;
  // P[tau > j], j >= 0.
  double tail(long long j) const;
  long long sample(RngStream& rng) const;
  int max_frames() const;  // support bound for Empirical; 0 = unbounded

private:
  std::variant<Geometric, Empirical> law_;
  double eps_undetected_ = 0.0;
};

}  // namespace urllc
