#pragma once

// Closed-form decaying vortex solution of the incompressible Navier-Stokes
// equations on [0, pi]^2.

#include "nsfd/algebra/difference.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace nsfd {

using algebra::Indet;

struct Point3 {
  double x, y, t;
};

class ExactSolution {
 public:
  explicit ExactSolution(double re) : re_(re) {}

  double re() const { return re_; }

  double u(double x, double y, double t) const { return -std::exp(-2 * t / re_) * std::cos(x) * std::sin(y); }
  double v(double x, double y, double t) const { return std::exp(-2 * t / re_) * std::sin(x) * std::cos(y); }
  double p(double x, double y, double t) const {
    return -std::exp(-4 * t / re_) * (std::cos(2 * x) + std::cos(2 * y)) / 4;
  }

  double eval(Indet which, double x, double y, double t) const {
    switch (which) {
      case Indet::u: return u(x, y, t);
      case Indet::v: return v(x, y, t);
      case Indet::p: return p(x, y, t);
    }
    return 0;
  }

  /// Values of the four Navier-Stokes residuals at a point, from hand-derived
  /// derivatives.
  std::array<double, 4> residuals(double x, double y, double t) const {
    const double E = std::exp(-2 * t / re_), F = std::exp(-4 * t / re_);
    const double cx = std::cos(x), sx = std::sin(x), cy = std::cos(y), sy = std::sin(y);

    const double u = -E * cx * sy, u_x = E * sx * sy, u_y = -E * cx * cy, u_t = 2 / re_ * E * cx * sy;
    const double u_xx = E * cx * sy, u_yy = E * cx * sy;
    const double v = E * sx * cy, v_x = E * cx * cy, v_y = -E * sx * sy, v_t = -2 / re_ * E * sx * cy;
    const double v_xx = -E * sx * cy, v_yy = -E * sx * cy;
    const double p_x = F * std::sin(2 * x) / 2, p_y = F * std::sin(2 * y) / 2;
    const double p_xx = F * std::cos(2 * x), p_yy = F * std::cos(2 * y);

    return {
        u_x + v_y,
        u_t + u * u_x + v * u_y + p_x - (u_xx + u_yy) / re_,
        v_t + u * v_x + v * v_y + p_y - (v_xx + v_yy) / re_,
        u_x * u_x + 2 * v_x * u_y + v_y * v_y + p_xx + p_yy,
    };
  }

 private:
  double re_;
};

/// Largest absolute residual of the four equations over the samples (0 if empty).
inline double residual_check(const ExactSolution& sol, const std::vector<Point3>& samples) {
  double worst = 0;
  for (const auto& s : samples)
    for (double r : sol.residuals(s.x, s.y, s.t)) worst = std::max(worst, std::abs(r));
  return worst;
}

}  // namespace nsfd
