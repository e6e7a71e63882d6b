#pragma once

#include <stdexcept>
#include <string>

namespace urllc {

// Bad user-facing parameters (out-of-range probabilities, invalid sizes).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Traffic intensity >= 1: the queue has no steady state.
class StabilityError : public std::runtime_error {
public:
  explicit StabilityError(const std::string& what) : std::runtime_error(what) {}
};

// A well-posed request with no feasible answer (e.g. no arrival rate meets the
// target because the undetected-error floor alone exceeds it).
class InfeasibleError : public std::runtime_error {
public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown: pole hit, recursion left its stability window,
// coefficient overflow, empty exponential-moment window, optimizer failure.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace urllc
