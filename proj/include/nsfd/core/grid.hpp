#pragma once

// Uniform grid on [0, pi]^2 with two ghost rings, scalar fields on it, and the
// (u, v, p) state at one time level.

#include "nsfd/core/errors.hpp"
#include "nsfd/core/exact_solution.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace nsfd {

inline constexpr int ghost_depth = 2;

struct GridSpec {
  int m = 0;
  double h = 0;
  double tau = 0;
  int n_steps = 0;
  double t_f = 0;
  double re = 1;
  bool diffusive_advisory = false;  // tau > re h^2 / 4
  bool advective_advisory = false;  // tau > h

  int lo() const { return 1 - ghost_depth; }
  int hi() const { return m + ghost_depth; }
};

inline void set_advisories(GridSpec& g) {
  g.diffusive_advisory = g.tau > g.re * g.h * g.h / 4;
  g.advective_advisory = g.tau > g.h;
}

/// Grid with h = pi/(m+1) and tau = t_f/n_steps, or tau = tau_override with
/// t_f = n_steps * tau_override.
inline GridSpec make_grid(int m, int n_steps, double t_f, double re, std::optional<double> tau_override = {}) {
  if (m < 3) throw ConfigError("m must be at least 3 for the 5x5 stencil, got " + std::to_string(m));
  if (n_steps < 1) throw ConfigError("n_steps must be positive, got " + std::to_string(n_steps));
  if (!(re > 0) || !std::isfinite(re)) throw ConfigError("Re must be positive");
  GridSpec g;
  g.m = m;
  g.h = std::numbers::pi / (m + 1);
  g.n_steps = n_steps;
  g.re = re;
  if (tau_override) {
    if (!(*tau_override > 0) || !std::isfinite(*tau_override)) throw ConfigError("tau must be positive");
    g.tau = *tau_override;
    g.t_f = n_steps * g.tau;
  } else {
    if (!(t_f > 0) || !std::isfinite(t_f)) throw ConfigError("t_f must be positive");
    g.t_f = t_f;
    g.tau = t_f / n_steps;
  }
  set_advisories(g);
  return g;
}

inline std::tuple<double, double, double> coords(const GridSpec& g, int j, int k, int n) {
  if (j < g.lo() || j > g.hi() || k < g.lo() || k > g.hi() || n < 0)
    throw std::out_of_range("coords: index outside the ghosted grid");
  // The last node is pinned so that x_{m+1} = pi exactly.
  auto x = [&](int i) { return i == g.m + 1 ? std::numbers::pi : i * g.h; };
  const double t = n == g.n_steps ? g.t_f : n * g.tau;
  return {x(j), x(k), t};
}

/// Scalar grid function indexed by (j, k), j, k in [-1, m+2].
class Field {
 public:
  Field() = default;
  explicit Field(int m, double fill = 0) : m_(m), width_(m + 2 * ghost_depth), data_(width_ * width_, fill) {}

  int m() const { return m_; }
  int lo() const { return 1 - ghost_depth; }
  int hi() const { return m_ + ghost_depth; }
  bool in_range(int j, int k) const { return j >= lo() && j <= hi() && k >= lo() && k <= hi(); }
  bool interior(int j, int k) const { return j >= 1 && j <= m_ && k >= 1 && k <= m_; }

  double& operator()(int j, int k) { return data_[index(j, k)]; }
  double operator()(int j, int k) const { return data_[index(j, k)]; }

  double& at(int j, int k) {
    if (!in_range(j, k)) throw std::out_of_range("Field::at");
    return (*this)(j, k);
  }
  double at(int j, int k) const {
    if (!in_range(j, k)) throw std::out_of_range("Field::at");
    return (*this)(j, k);
  }

  const std::vector<double>& data() const { return data_; }
  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::size_t index(int j, int k) const { return static_cast<std::size_t>((j - lo()) * width_ + (k - lo())); }

  int m_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

enum class Region { ghost_and_boundary, everywhere };

/// Overwrites the chosen region of `f` with exact values at time t.
inline void fill_exact(Field& f, Indet which, const GridSpec& g, const ExactSolution& sol, double t, Region region) {
  for (int j = f.lo(); j <= f.hi(); ++j)
    for (int k = f.lo(); k <= f.hi(); ++k) {
      if (region == Region::ghost_and_boundary && f.interior(j, k)) continue;
      auto [x, y, unused] = coords(g, j, k, 0);
      f(j, k) = sol.eval(which, x, y, t);
    }
}

struct State {
  Field u, v, p;
  int level = 0;

  const Field& get(Indet w) const { return w == Indet::u ? u : (w == Indet::v ? v : p); }
  Field& get(Indet w) { return w == Indet::u ? u : (w == Indet::v ? v : p); }
};

/// State filled with exact values everywhere at the time of `level`.
inline State exact_state(const GridSpec& g, const ExactSolution& sol, int level) {
  State s{Field(g.m), Field(g.m), Field(g.m), level};
  const double t = std::get<2>(coords(g, 0, 0, level));
  for (Indet w : {Indet::u, Indet::v, Indet::p}) fill_exact(s.get(w), w, g, sol, t, Region::everywhere);
  return s;
}

}  // namespace nsfd
