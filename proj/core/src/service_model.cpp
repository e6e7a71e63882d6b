#include "urllc/service_model.hpp"

#include <cmath>

#include "urllc/errors.hpp"

namespace urllc {

ServiceModel ServiceModel::geometric(double eps_frame, double eps_undetected) {
  if (eps_frame < 0.0 || eps_frame >= 1.0) {
    throw ConfigError("ServiceModel::geometric: eps_frame must be in [0,1) (service never completes)");
  }
  if (eps_undetected < 0.0 || eps_undetected > 1.0) {
    throw ConfigError("ServiceModel: eps_undetected must be in [0,1]");
  }
  ServiceModel m;
  m.law_ = Geometric{eps_frame};
  m.eps_undetected_ = eps_undetected;
  return m;
}

ServiceModel ServiceModel::empirical(std::vector<double> pmf, double eps_undetected) {
  if (pmf.empty()) throw ConfigError("ServiceModel::empirical: empty pmf");
  double sum = 0.0;
  for (double p : pmf) {
    if (p < -1e-12) throw ConfigError("ServiceModel::empirical: negative mass");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("ServiceModel::empirical: pmf does not sum to 1 within 1e-9");
  }
  if (eps_undetected < 0.0 || eps_undetected > 1.0) {
    throw ConfigError("ServiceModel: eps_undetected must be in [0,1]");
  }
  ServiceModel m;
  m.law_ = Empirical{std::move(pmf)};
  m.eps_undetected_ = eps_undetected;
  return m;
}

double ServiceModel::mean() const {
  if (is_geometric()) return 1.0 / (1.0 - eps_frame());
  const auto& p = pmf();
  double m = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) m += p[i] * static_cast<double>(i + 1);
  return m;
}

RationalPgf ServiceModel::pgf() const {
  if (is_geometric()) return RationalPgf::geometric(eps_frame());
  const auto& p = pmf();
  std::vector<double> coeffs(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) coeffs[i + 1] = std::max(p[i], 0.0);
  return RationalPgf(Polynomial(std::move(coeffs)), Polynomial({1.0}));
}

double ServiceModel::tail(long long j) const {
  if (j < 0) return 1.0;
  if (is_geometric()) return std::pow(eps_frame(), static_cast<double>(j));
  const auto& p = pmf();
  double t = 1.0;
  for (long long i = 0; i < j && i < static_cast<long long>(p.size()); ++i) {
    t -= p[static_cast<std::size_t>(i)];
  }
  if (j >= static_cast<long long>(p.size())) return 0.0;
  return std::max(t, 0.0);
}

long long ServiceModel::sample(RngStream& rng) const {
  if (is_geometric()) return rng.geometric1(eps_frame());
  const auto& p = pmf();
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return static_cast<long long>(i + 1);
  }
  return static_cast<long long>(p.size());
}

int ServiceModel::max_frames() const {
  return is_geometric() ? 0 : static_cast<int>(pmf().size());
}

}  // namespace urllc
