#pragma once

// Time stepping driver, error metrics, sweeps and their CSV/SVG outputs.

#include "nsfd/core/grid.hpp"
#include "nsfd/schemes/numeric.hpp"
#include "nsfd/solver/pcg.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace nsfd {

struct ExperimentConfig {
  SchemeId scheme = SchemeId::fda1;
  int m = 50;
  int n_steps = 10;
  double t_f = 1;
  double re = 1e5;
  std::optional<double> tau_override;
};

struct ErrorReport {
  ExperimentConfig config;
  GridSpec grid;
  double err_u = 0, err_v = 0, err_p = 0;
  double res_e1 = 0;
  double runtime_s = 0;
  std::vector<int> solver_iterations;  // per step
  double solver_max_residual = 0;
  std::string error;  // set when the run failed inside a sweep

  double max_error() const { return std::max({err_u, err_v, err_p}); }
};

struct RunResult {
  ErrorReport report;
  State final_state;
};

/// The grid for a config. n_steps = 0 is accepted here as the degenerate run
/// that stays at t = 0.
inline GridSpec grid_for(const ExperimentConfig& c) {
  if (c.n_steps == 0) {
    GridSpec g = make_grid(c.m, 1, 1, c.re);
    g.n_steps = 0;
    g.t_f = 0;
    g.tau = 0;
    set_advisories(g);
    return g;
  }
  return make_grid(c.m, c.n_steps, c.t_f, c.re, c.tau_override);
}

/// Pointwise |g - g_exact| / (1 + |g_exact|) for g = u, v, p; zero off the interior.
inline std::array<Field, 3> error_field(const GridSpec& g, const State& s, const ExactSolution& sol) {
  std::array<Field, 3> out{Field(g.m), Field(g.m), Field(g.m)};
  const double t = std::get<2>(coords(g, 0, 0, s.level));
  const Indet which[3] = {Indet::u, Indet::v, Indet::p};
  for (int i = 0; i < 3; ++i)
    for (int j = 1; j <= g.m; ++j)
      for (int k = 1; k <= g.m; ++k) {
        auto [x, y, unused] = coords(g, j, k, 0);
        const double exact = sol.eval(which[i], x, y, t);
        out[i](j, k) = std::abs(s.get(which[i])(j, k) - exact) / (1 + std::abs(exact));
      }
  return out;
}

inline double max_interior(const Field& f) {
  double m = 0;
  for (int j = 1; j <= f.m(); ++j)
    for (int k = 1; k <= f.m(); ++k) m = std::max(m, f(j, k));
  return m;
}

/// Runs the scheme from exact data at t = 0 to t_f and measures the errors.
inline RunResult run_with_state(const ExperimentConfig& c, const SolverOptions& solver = {}) {
  const auto start = std::chrono::steady_clock::now();
  const GridSpec g = grid_for(c);
  const ExactSolution sol(c.re);
  State s = exact_state(g, sol, 0);
  ErrorReport rep;
  rep.config = c;
  rep.grid = g;

  for (int n = 0; n < g.n_steps; ++n) {
    auto [un, vn] = step_velocity(c.scheme, g, sol, s);
    const double t = std::get<2>(coords(g, 0, 0, n + 1));
    SparseSystem sys = assemble_pressure(c.scheme, g, sol, un, vn, t);
    sys.scale(-g.h * g.h);
    SolveResult sr;
    try {
      sr = solve(sys, solver);
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " at step " + std::to_string(n), e.best_residual, e.iterations);
    }
    Field pn(g.m);
    for (int j = 1; j <= g.m; ++j)
      for (int k = 1; k <= g.m; ++k) {
        pn(j, k) = sr.x[interior_index(g, j, k)];
        if (!std::isfinite(pn(j, k))) throw InstabilityError(static_cast<int>(c.scheme), n, j, k);
      }
    fill_exact(pn, Indet::p, g, sol, t, Region::ghost_and_boundary);
    s = State{std::move(un), std::move(vn), std::move(pn), n + 1};
    rep.solver_iterations.push_back(sr.iterations);
    rep.solver_max_residual = std::max(rep.solver_max_residual, sr.residual);
  }

  const auto errs = error_field(g, s, sol);
  rep.err_u = max_interior(errs[0]);
  rep.err_v = max_interior(errs[1]);
  rep.err_p = max_interior(errs[2]);
  rep.res_e1 = max_abs_residual_e1(c.scheme, g, s);
  rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(rep), std::move(s)};
}

inline ErrorReport run(const ExperimentConfig& c, const SolverOptions& solver = {}) {
  return run_with_state(c, solver).report;
}

/// Runs every config (in parallel) and returns the reports in input order.
/// A failing run yields a row with `error` set; the sweep continues.
inline std::vector<ErrorReport> sweep(const std::vector<ExperimentConfig>& configs, unsigned threads = 0) {
  if (configs.empty()) throw ConfigError("sweep needs at least one configuration");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<ErrorReport> out(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        out[i] = run(configs[i]);
      } catch (const std::exception& e) {
        out[i].config = configs[i];
        out[i].error = e.what();
        out[i].err_u = out[i].err_v = out[i].err_p = out[i].res_e1 = NAN;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, configs.size()); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

inline constexpr const char* csv_header =
    "fda,m,n_steps,tau,re,tf,err_u,err_v,err_p,res_e1,runtime_s,solver_max_residual";

inline void write_csv_row(std::ostream& os, const ErrorReport& r) {
  std::ostringstream line;
  line << std::setprecision(10);
  const double tau = r.grid.m ? r.grid.tau : r.config.tau_override.value_or(r.config.t_f / std::max(1, r.config.n_steps));
  const double tf = r.grid.m ? r.grid.t_f : r.config.t_f;
  line << static_cast<int>(r.config.scheme) << "," << r.config.m << "," << r.config.n_steps << "," << tau << ","
       << r.config.re << "," << tf << "," << r.err_u << "," << r.err_v << "," << r.err_p << "," << r.res_e1 << ","
       << r.runtime_s << "," << r.solver_max_residual;
  os << line.str() << "\n";
}

inline void write_csv(std::ostream& os, const std::vector<ErrorReport>& rows) {
  os << csv_header << "\n";
  for (const auto& r : rows) write_csv_row(os, r);
}

/// Interior values as a CSV grid: one line per k (bottom row first), one column per j.
inline void write_heatmap_csv(std::ostream& os, const Field& f) {
  os << std::setprecision(10);
  for (int k = 1; k <= f.m(); ++k) {
    for (int j = 1; j <= f.m(); ++j) os << (j > 1 ? "," : "") << f(j, k);
    os << "\n";
  }
}

/// A minimal SVG raster of the interior values, light (small) to dark (large).
inline void write_heatmap_svg(std::ostream& os, const Field& f, const std::string& title) {
  const int m = f.m(), cell = std::max(2, 400 / std::max(1, m));
  const double hi = std::max(max_interior(f), 1e-300);
  const int size = m * cell;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size + 24 << "\">\n";
  os << "<text x=\"4\" y=\"16\" font-family=\"sans-serif\" font-size=\"14\">" << title << " (max " << std::setprecision(3)
     << hi << ")</text>\n";
  for (int j = 1; j <= m; ++j)
    for (int k = 1; k <= m; ++k) {
      const double a = std::clamp(f(j, k) / hi, 0.0, 1.0);
      const int shade = static_cast<int>(std::lround(255 * (1 - a)));
      os << "<rect x=\"" << (j - 1) * cell << "\" y=\"" << 24 + (m - k) * cell << "\" width=\"" << cell
         << "\" height=\"" << cell << "\" fill=\"rgb(255," << shade << "," << shade << ")\"/>\n";
    }
  os << "</svg>\n";
}

/// The configurations behind each figure.
inline std::vector<ExperimentConfig> figure_configs(int figure) {
  std::vector<ExperimentConfig> out;
  auto add_sweep = [&](int m_lo, int m_hi, int m_step, int n_steps, double re) {
    for (SchemeId s : all_schemes)
      for (int m = m_lo; m <= m_hi; m += m_step) out.push_back({s, m, n_steps, 1.0, re, std::nullopt});
  };
  switch (figure) {
    case 1:
    case 2: add_sweep(5, 50, 5, 10, 1e5); break;
    case 3: add_sweep(10, 100, 10, 40, 100); break;
    case 4: out.push_back({SchemeId::fda1, 100, 40, 1.0, 100, std::nullopt}); break;
    default: throw ConfigError("figure must be 1, 2, 3 or 4");
  }
  return out;
}

/// Distance in cells from node (j, k) to the boundary of the domain.
inline int boundary_distance(const GridSpec& g, int j, int k) {
  return std::min({j, k, g.m + 1 - j, g.m + 1 - k});
}

struct ArgMax {
  int j = 0, k = 0;
  double value = 0;
};

inline ArgMax argmax_interior(const Field& f) {
  ArgMax best{1, 1, f(1, 1)};
  for (int j = 1; j <= f.m(); ++j)
    for (int k = 1; k <= f.m(); ++k)
      if (f(j, k) > best.value) best = {j, k, f(j, k)};
  return best;
}

}  // namespace nsfd
