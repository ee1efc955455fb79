// Command line front end: single runs, sweeps, figure presets and the
// consistency report.

#include "nsfd/consistency/report.hpp"
#include "nsfd/harness/harness.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace nsfd;

namespace {

enum ExitCode { ok = 0, instability = 2, solver_failure = 3, bad_config = 4 };

std::ofstream open_out(const std::filesystem::path& p) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream os(p);
  if (!os) throw ConfigError("cannot write " + p.string());
  return os;
}

void emit_csv(const std::vector<ErrorReport>& rows, const std::string& out) {
  if (out.empty()) {
    write_csv(std::cout, rows);
    return;
  }
  auto os = open_out(out);
  write_csv(os, rows);
}

void advise(const GridSpec& g) {
  if (g.diffusive_advisory) std::cerr << "advisory: tau > Re h^2 / 4\n";
  if (g.advective_advisory) std::cerr << "advisory: tau > h\n";
}

void dump_first_system(const ExperimentConfig& c, const std::string& path) {
  const GridSpec g = grid_for(c);
  if (g.n_steps == 0) return;
  const ExactSolution sol(c.re);
  const State s = exact_state(g, sol, 0);
  auto [u, v] = step_velocity(c.scheme, g, sol, s);
  SparseSystem sys = assemble_pressure(c.scheme, g, sol, u, v, std::get<2>(coords(g, 0, 0, 1)));
  sys.scale(-g.h * g.h);
  auto os = open_out(path);
  sys.write_csv(os);
}

int rethrow_as_exit_code() {
  try {
    throw;
  } catch (const InstabilityError& e) {
    std::cerr << "instability: " << e.what() << "\n";
    return instability;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << " (best residual " << e.best_residual << ")\n";
    return solver_failure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad configuration: " << e.what() << "\n";
    return bad_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite difference schemes for 2D incompressible Navier-Stokes"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Run one scheme and print its error row");
  int fda = 1, m = 50, steps = 10;
  double tf = 1, re = 1e5;
  std::optional<double> tau;
  std::string out, dump;
  solve_cmd->add_option("--fda", fda, "Scheme 1, 2 or 3")->required()->check(CLI::Range(1, 3));
  solve_cmd->add_option("--m", m, "Interior points per direction")->required();
  solve_cmd->add_option("--steps", steps, "Number of time steps N")->required();
  solve_cmd->add_option("--tf", tf, "Final time")->required();
  solve_cmd->add_option("--re", re, "Reynolds number")->required();
  solve_cmd->add_option("--tau", tau, "Time step override (t_f becomes N*tau)");
  solve_cmd->add_option("--out", out, "CSV output path (default stdout)");
  solve_cmd->add_option("--dump-system", dump, "Write the first pressure system as CSV");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Run every scheme/m combination");
  std::vector<int> fdas, ms;
  sweep_cmd->add_option("--fda", fdas, "Comma separated schemes")->required()->delimiter(',');
  sweep_cmd->add_option("--m", ms, "Comma separated grid sizes")->required()->delimiter(',');
  sweep_cmd->add_option("--steps", steps, "Number of time steps N")->required();
  sweep_cmd->add_option("--tf", tf, "Final time")->required();
  sweep_cmd->add_option("--re", re, "Reynolds number")->required();
  sweep_cmd->add_option("--out", out, "CSV output path")->required();

  // figure
  auto* fig_cmd = app.add_subcommand("figure", "Regenerate the data behind a figure");
  int figure = 1;
  std::string dir;
  fig_cmd->add_option("figure", figure, "Figure 1, 2, 3 or 4")->required()->check(CLI::Range(1, 4));
  fig_cmd->add_option("--out", dir, "Output directory")->required();

  // consistency
  auto* cons_cmd = app.add_subcommand("consistency", "Symbolic consistency analysis of a scheme");
  std::string report_path;
  int bound = default_order_bound;
  cons_cmd->add_option("--fda", fda, "Scheme 1, 2 or 3")->required()->check(CLI::Range(1, 3));
  cons_cmd->add_option("--report", report_path, "Write the JSON report here");
  cons_cmd->add_option("--order-bound", bound, "Derivative order bound for ideal reduction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bad_config;
  }

  try {
    if (*solve_cmd) {
      const ExperimentConfig c{scheme_from_int(fda), m, steps, tf, re, tau};
      advise(grid_for(c));
      if (!dump.empty()) dump_first_system(c, dump);
      emit_csv({run(c)}, out);
    } else if (*sweep_cmd) {
      std::vector<ExperimentConfig> cs;
      for (int f : fdas)
        for (int mm : ms) cs.push_back({scheme_from_int(f), mm, steps, tf, re, std::nullopt});
      const auto rows = sweep(cs);
      emit_csv(rows, out);
      for (const auto& r : rows)
        if (!r.error.empty())
          std::cerr << scheme_name(r.config.scheme) << " m=" << r.config.m << ": " << r.error << "\n";
    } else if (*fig_cmd) {
      const std::filesystem::path base(dir);
      const auto cs = figure_configs(figure);
      if (figure == 4) {
        const auto res = run_with_state(cs[0]);
        const auto errs = error_field(res.report.grid, res.final_state, ExactSolution(cs[0].re));
        const char* names[] = {"u", "v", "p"};
        for (int i = 0; i < 3; ++i) {
          auto csv = open_out(base / ("fig4_err_" + std::string(names[i]) + ".csv"));
          write_heatmap_csv(csv, errs[i]);
          auto svg = open_out(base / ("fig4_err_" + std::string(names[i]) + ".svg"));
          write_heatmap_svg(svg, errs[i], std::string("FDA1 error in ") + names[i]);
        }
        emit_csv({res.report}, (base / "fig4.csv").string());
      } else {
        emit_csv(sweep(cs), (base / ("fig" + std::to_string(figure) + ".csv")).string());
      }
      std::cout << "wrote " << base.string() << "\n";
    } else if (*cons_cmd) {
      const auto r = full_report(scheme_from_int(fda), bound);
      std::cout << to_text(r);
      if (!report_path.empty()) {
        auto os = open_out(report_path);
        os << to_json(r).dump(2) << "\n";
      }
    }
  } catch (...) {
    return rethrow_as_exit_code();
  }
  return ok;
}
