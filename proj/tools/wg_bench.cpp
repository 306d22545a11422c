#include "wg/bench.hpp"
#include "wg/selftest.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

using nlohmann::json;

wg::SolveMethod parse_method(const std::string& s) {
  if (s == "auto") return wg::SolveMethod::automatic;
  if (s == "cg") return wg::SolveMethod::cg;
  if (s == "cholesky") return wg::SolveMethod::cholesky;
  throw CLI::ValidationError("--method", "expected auto|cg|cholesky");
}

wg::TableFormat parse_format(const std::string& s) {
  if (s == "markdown") return wg::TableFormat::markdown;
  if (s == "csv") return wg::TableFormat::csv;
  throw CLI::ValidationError("--format", "expected csv|markdown");
}

void write_reports(const std::vector<wg::ConvergenceReport>& reports, const std::string& format,
                   const std::string& out_path) {
  if (out_path.empty())
    wg::emit_table(reports, parse_format(format), std::cout);
  else
    wg::emit_table_to_file(reports, parse_format(format), out_path);
}

int fail_with_summary(const std::string& command, const std::exception& e) {
  json summary{{"status", "error"}, {"command", command}, {"what", e.what()}};
  std::cerr << summary.dump() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lowest-order locking-free weak Galerkin benchmarks for linear elasticity"};
  app.require_subcommand(1);

  std::string case_name, algorithm = "new", algorithms = "new,standard";
  std::string format = "markdown", out_path, method = "auto";
  double mu = 1.0, lambda = 1.0;
  std::vector<int> levels;
  std::vector<double> lambdas = {1.0, 1e2, 1e4, 1e6, 1e8};
  wg::RunOptions options;
  bool fast = false;
  int dump_dim = 2, dump_level = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--levels", levels, "mesh levels (1/h for 2D, level for 3D)")
        ->required()
        ->delimiter(',');
    cmd->add_option("--quad-rhs", options.quad_rhs, "quadrature degree for load assembly");
    cmd->add_option("--quad-err", options.quad_err, "quadrature degree for projections and errors");
    cmd->add_option("--tol", options.tol, "solver relative residual tolerance");
    cmd->add_option("--max-iter", options.max_iter, "solver iteration cap (default 20*n)");
    cmd->add_option("--method", method, "solver method: auto|cg|cholesky");
    cmd->add_option("--format", format, "output format: csv|markdown");
    cmd->add_option("--out", out_path, "output file (default stdout)");
  };

  CLI::App* converge = app.add_subcommand("converge", "convergence study for one case");
  converge->add_option("--case", case_name, "case name")->required();
  converge->add_option("--algorithm", algorithm, "new|standard");
  converge->add_option("--mu", mu, "first Lame parameter");
  converge->add_option("--lambda", lambda, "second Lame parameter");
  add_common(converge);

  CLI::App* locking = app.add_subcommand("locking", "sweep over lambda values and algorithms");
  locking->add_option("--case", case_name, "case name")->required();
  locking->add_option("--algorithms", algorithms, "comma list of new|standard");
  locking->add_option("--mu", mu, "first Lame parameter");
  locking->add_option("--lambdas", lambdas, "lambda values")->delimiter(',');
  add_common(locking);

  CLI::App* selftest = app.add_subcommand("selftest", "run the invariant suite");
  selftest->add_flag("--fast", fast, "skip the large desk-scale meshes");

  CLI::App* dump = app.add_subcommand("dump-mesh", "plain-text mesh dump for debugging");
  dump->add_option("--dim", dump_dim, "2 or 3")->required();
  dump->add_option("--level", dump_level, "1/h for 2D, level for 3D")->required();
  dump->add_option("--out", out_path, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (converge->parsed()) {
      options.method = parse_method(method);
      auto report = wg::run_convergence(case_name, wg::algorithm_from_string(algorithm), mu, lambda,
                                        levels, options);
      write_reports({report}, format, out_path);
    } else if (locking->parsed()) {
      options.method = parse_method(method);
      std::vector<wg::Algorithm> algs;
      std::stringstream ss(algorithms);
      std::string item;
      while (std::getline(ss, item, ',')) algs.push_back(wg::algorithm_from_string(item));
      auto reports = wg::run_locking_sweep(case_name, algs, mu, lambdas, levels, options);
      write_reports(reports, format, out_path);
    } else if (selftest->parsed()) {
      const wg::SelftestReport report = wg::run_property_suite(!fast);
      json failures = json::array();
      for (const auto& check : report.checks) {
        std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << check.name << " (" << check.detail
                  << ")\n";
        if (!check.pass) failures.push_back({{"name", check.name}, {"detail", check.detail}});
      }
      json summary{{"status", report.all_pass() ? "ok" : "failed"},
                   {"checks", report.checks.size()},
                   {"failures", failures}};
      std::cout << summary.dump() << "\n";
      return report.all_pass() ? 0 : 2;
    } else if (dump->parsed()) {
      std::ostream* out = &std::cout;
      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot open output file: " + out_path);
        out = &file;
      }
      if (dump_dim == 2)
        wg::write_mesh_text(wg::build_uniform_triangle_mesh(dump_level), *out);
      else if (dump_dim == 3)
        wg::write_mesh_text(wg::build_uniform_tet_mesh(dump_level), *out);
      else
        throw std::invalid_argument("--dim must be 2 or 3");
    }
  } catch (const std::exception& e) {
    return fail_with_summary(app.get_subcommands().front()->get_name(), e);
  }
  return 0;
}
