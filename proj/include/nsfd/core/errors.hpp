#pragma once

#include <stdexcept>
#include <string>

namespace nsfd {

/// Invalid parameters or CLI input.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A time step produced a non-finite value.
class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(int scheme, int step, int j, int k)
      : std::runtime_error("non-finite value in FDA" + std::to_string(scheme) + " at step " + std::to_string(step) +
                           ", node (" + std::to_string(j) + "," + std::to_string(k) + ")"),
        scheme(scheme), step(step), j(j), k(k) {}
  int scheme, step, j, k;
};

/// The pressure solve did not reach its tolerance.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best_residual, int iterations)
      : std::runtime_error(what), best_residual(best_residual), iterations(iterations) {}
  double best_residual;
  int iterations;
};

}  // namespace nsfd
