#include "urllc/polynomial.hpp"

#include <cmath>
#include <cstddef>

#include "urllc/errors.hpp"

namespace urllc {

namespace {
constexpr double kOverflowGuard = 1e300;

void check_overflow(const std::vector<double>& c) {
  for (double v : c) {
    if (!std::isfinite(v) || std::abs(v) > kOverflowGuard) {
      throw NumericalError("polynomial coefficient overflow");
    }
  }
}
}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(0.0);
  trim();
}

Polynomial::Polynomial(std::initializer_list<double> coeffs) : c_(coeffs) {
  if (c_.empty()) c_.push_back(0.0);
  trim();
}

void Polynomial::trim() {
  while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::eval(double s) const {
  double r = 0.0;
  for (std::size_t i = c_.size(); i-- > 0;) r = r * s + c_[i];
  return r;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0.0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  check_overflow(r);
  return Polynomial(std::move(r));
}

Polynomial Polynomial::scaled(double a) const {
  std::vector<double> r(c_);
  for (double& v : r) v *= a;
  check_overflow(r);
  return Polynomial(std::move(r));
}

Polynomial Polynomial::pow(int n) const {
  Polynomial result({1.0});
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::substitute_power(int n) const {
  std::vector<double> r(static_cast<std::size_t>(degree()) * n + 1, 0.0);
  for (std::size_t k = 0; k < c_.size(); ++k) r[k * n] = c_[k];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::deflate_at_one() const {
  const double scale = max_abs_coeff();
  const double at_one = eval(1.0);
  if (std::abs(at_one) > 1e-7 * (scale > 0 ? scale : 1.0)) {
    throw NumericalError("deflate_at_one: polynomial does not vanish at s=1");
  }
  if (c_.size() == 1) return Polynomial({0.0});
  std::vector<double> q(c_.size() - 1, 0.0);
  double acc = 0.0;
  for (std::size_t k = c_.size(); k-- > 1;) {
    acc += c_[k];
    q[k - 1] = acc;
  }
  return Polynomial(std::move(q));
}

Polynomial Polynomial::shift_down() const {
  const double scale = max_abs_coeff();
  if (std::abs(c_[0]) > 1e-9 * (scale > 0 ? scale : 1.0)) {
    throw NumericalError("shift_down: nonzero constant term");
  }
  if (c_.size() == 1) return Polynomial({0.0});
  return Polynomial(std::vector<double>(c_.begin() + 1, c_.end()));
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

int Polynomial::min_power() const {
  const double cutoff = 1e-12 * max_abs_coeff();
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (std::abs(c_[k]) > cutoff) return static_cast<int>(k);
  }
  return static_cast<int>(c_.size());
}

}  // namespace urllc
