#include "wg/bench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wg {

namespace {

template <int dim>
VecFn<dim> bind_u(const ManufacturedCase<dim>& mc, double mu, double lambda) {
  return [&mc, mu, lambda](const Vec<dim>& x) { return mc.u(x, mu, lambda); };
}

template <int dim>
SimplicialMesh<dim> build_level_mesh(int level);

template <>
SimplicialMesh<2> build_level_mesh<2>(int level) { return build_uniform_triangle_mesh(level); }

template <>
SimplicialMesh<3> build_level_mesh<3>(int level) { return build_uniform_tet_mesh(level); }

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4e", v);
  return buf;
}

std::string format_order(double v) {
  if (std::isnan(v)) return "--";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string format_full(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "new") return Algorithm::reconstructed;
  if (s == "standard") return Algorithm::standard;
  throw std::invalid_argument("unknown algorithm: " + s + " (expected new|standard)");
}

std::string algorithm_to_string(Algorithm a) {
  return a == Algorithm::reconstructed ? "new" : "standard";
}

template <int dim>
double energy_error(const SimplicialMesh<dim>& mesh, const ManufacturedCase<dim>& mc, double mu,
                    double lambda, const WGField<dim>& solution, int quad_degree) {
  WGField<dim> diff = project_Qh(mesh, bind_u(mc, mu, lambda), quad_degree);
  diff.coeffs -= solution.coeffs;
  return triple_bar_norm(mesh, diff);
}

template <int dim>
double l2_error(const SimplicialMesh<dim>& mesh, const ManufacturedCase<dim>& mc, double mu,
                double lambda, const WGField<dim>& solution, int quad_degree) {
  Eigen::VectorXd diff = project_Q0(mesh, bind_u(mc, mu, lambda), quad_degree);
  diff -= solution.coeffs.head(interior_block_size(mesh));
  // Exact P1 mass: c' M c = |T|/((d+1)(d+2)) (sum c_a^2 + (sum c_a)^2) per component.
  double total = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const double scale = mesh.cell_volume[c] / ((dim + 1) * (dim + 2));
    for (int k = 0; k < dim; ++k) {
      double sum = 0.0, sumsq = 0.0;
      for (int a = 0; a <= dim; ++a) {
        const double v = diff[(c * (dim + 1) + a) * dim + k];
        sum += v;
        sumsq += v * v;
      }
      total += scale * (sumsq + sum * sum);
    }
  }
  return std::sqrt(total);
}

template <int dim>
std::pair<WGField<dim>, SolveReport> solve_case(const SimplicialMesh<dim>& mesh,
                                                const ManufacturedCase<dim>& mc, Algorithm algorithm,
                                                double mu, double lambda, const RunOptions& options) {
  const DofMap<dim> dof_map(mesh);
  SparseSystem<dim> system = assemble_bilinear(mesh, dof_map, mu, lambda);

  auto f = [&mc, mu, lambda](const Vec<dim>& x) { return mc.f(x, mu, lambda); };
  const Eigen::VectorXd rhs_full = (algorithm == Algorithm::reconstructed)
                                       ? assemble_rhs_reconstructed(mesh, f, options.quad_rhs)
                                       : assemble_rhs_standard(mesh, f, options.quad_rhs);
  const Eigen::VectorXd bc = boundary_projection(mesh, bind_u(mc, mu, lambda), options.quad_err);
  apply_rhs(system, rhs_full, bc);

  SolveOptions sopt;
  sopt.tol = options.tol;
  sopt.max_iter = options.max_iter;
  sopt.method = options.method;
  auto [x, report] = solve_spd(system, sopt);
  if (!report.ok()) {
    throw std::runtime_error("solver failed (" + report.method + ", status " +
                             std::to_string(static_cast<int>(report.status)) + ", residual " +
                             std::to_string(report.rel_residual) + ")");
  }
  return {expand_solution(mesh, dof_map, x, bc), report};
}

namespace {

template <int dim>
ConvergenceReport run_convergence_impl(const ManufacturedCase<dim>& mc, Algorithm algorithm,
                                       double mu, double lambda, const std::vector<int>& levels,
                                       const RunOptions& options) {
  ConvergenceReport report;
  report.case_name = mc.name;
  report.algorithm = algorithm_to_string(algorithm);
  report.mu = mu;
  report.lambda = lambda;

  for (int level : levels) {
    const SimplicialMesh<dim> mesh = build_level_mesh<dim>(level);
    ReportRow row;
    row.level = level;
    row.h = mesh_size(mesh);
    try {
      auto [solution, solve_report] = solve_case(mesh, mc, algorithm, mu, lambda, options);
      row.energy_error = energy_error(mesh, mc, mu, lambda, solution, options.quad_err);
      row.l2_error = l2_error(mesh, mc, mu, lambda, solution, options.quad_err);
    } catch (const std::exception& e) {
      throw std::runtime_error("case " + mc.name + ", level " + std::to_string(level) + ": " +
                               e.what());
    }
    if (!report.rows.empty()) {
      const ReportRow& prev = report.rows.back();
      const double ratio = std::log(prev.h / row.h);
      row.energy_order = std::log(prev.energy_error / row.energy_error) / ratio;
      row.l2_order = std::log(prev.l2_error / row.l2_error) / ratio;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace

ConvergenceReport run_convergence(const std::string& case_name, Algorithm algorithm, double mu,
                                  double lambda, const std::vector<int>& levels,
                                  const RunOptions& options) {
  if (levels.empty()) throw std::invalid_argument("run_convergence: empty level list");
  for (size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1])
      throw std::invalid_argument("run_convergence: levels must be ascending");

  const int dim = case_dim(case_name);
  if (dim == 2)
    return run_convergence_impl<2>(find_case_2d(case_name), algorithm, mu, lambda, levels, options);
  if (dim == 3)
    return run_convergence_impl<3>(find_case_3d(case_name), algorithm, mu, lambda, levels, options);
  throw std::invalid_argument("unknown case: " + case_name);
}

std::vector<ConvergenceReport> run_locking_sweep(const std::string& case_name,
                                                 const std::vector<Algorithm>& algorithms, double mu,
                                                 const std::vector<double>& lambdas,
                                                 const std::vector<int>& levels,
                                                 const RunOptions& options) {
  if (lambdas.empty()) throw std::invalid_argument("run_locking_sweep: empty lambda list");
  std::vector<ConvergenceReport> reports;
  for (Algorithm algorithm : algorithms)
    for (double lambda : lambdas)
      reports.push_back(run_convergence(case_name, algorithm, mu, lambda, levels, options));
  return reports;
}

void emit_table(const ConvergenceReport& report, TableFormat format, std::ostream& out) {
  const bool is_3d = case_dim(report.case_name) == 3;
  const char* level_label = is_3d ? "level" : "1/h";
  if (format == TableFormat::markdown) {
    out << "### case " << report.case_name << ", algorithm " << report.algorithm << ", mu "
        << report.mu << ", lambda " << report.lambda << "\n\n";
    out << "| " << level_label << " | energy error | order | L2 error | order |\n";
    out << "| --- | --- | --- | --- | --- |\n";
    for (const auto& row : report.rows) {
      out << "| " << row.level << " | " << format_sci(row.energy_error) << " | "
          << format_order(row.energy_order) << " | " << format_sci(row.l2_error) << " | "
          << format_order(row.l2_order) << " |\n";
    }
    out << "\n";
  } else {
    out << "case,algorithm,mu,lambda," << "level,h,energy_error,energy_order,l2_error,l2_order,"
        << "energy_error_fmt,energy_order_fmt,l2_error_fmt,l2_order_fmt\n";
    for (const auto& row : report.rows) {
      out << report.case_name << ',' << report.algorithm << ',' << format_full(report.mu) << ','
          << format_full(report.lambda) << ',' << row.level << ',' << format_full(row.h) << ','
          << format_full(row.energy_error) << ',' << format_full(row.energy_order) << ','
          << format_full(row.l2_error) << ',' << format_full(row.l2_order) << ','
          << format_sci(row.energy_error) << ',' << format_order(row.energy_order) << ','
          << format_sci(row.l2_error) << ',' << format_order(row.l2_order) << "\n";
    }
  }
}

void emit_table(const std::vector<ConvergenceReport>& reports, TableFormat format,
                std::ostream& out) {
  for (const auto& report : reports) emit_table(report, format, out);
}

void emit_table_to_file(const std::vector<ConvergenceReport>& reports, TableFormat format,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  emit_table(reports, format, out);
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

std::vector<ConvergenceReport> parse_table_csv(std::istream& in) {
  std::vector<ConvergenceReport> reports;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("case,", 0) == 0) continue;
    std::stringstream ss(line);
    std::string item;
    std::vector<std::string> fields;
    while (std::getline(ss, item, ',')) fields.push_back(item);
    if (fields.size() < 10) continue;
    const std::string& name = fields[0];
    const std::string& algorithm = fields[1];
    const double mu = std::stod(fields[2]);
    const double lambda = std::stod(fields[3]);
    if (reports.empty() || reports.back().case_name != name ||
        reports.back().algorithm != algorithm || reports.back().mu != mu ||
        reports.back().lambda != lambda) {
      reports.push_back(ConvergenceReport{name, algorithm, mu, lambda, {}});
    }
    ReportRow row;
    row.level = std::stoi(fields[4]);
    row.h = std::stod(fields[5]);
    row.energy_error = std::stod(fields[6]);
    row.energy_order = std::stod(fields[7]);
    row.l2_error = std::stod(fields[8]);
    row.l2_order = std::stod(fields[9]);
    reports.back().rows.push_back(row);
  }
  return reports;
}

template double energy_error<2>(const SimplicialMesh<2>&, const ManufacturedCase<2>&, double, double,
                                const WGField<2>&, int);
template double energy_error<3>(const SimplicialMesh<3>&, const ManufacturedCase<3>&, double, double,
                                const WGField<3>&, int);
template double l2_error<2>(const SimplicialMesh<2>&, const ManufacturedCase<2>&, double, double,
                            const WGField<2>&, int);
template double l2_error<3>(const SimplicialMesh<3>&, const ManufacturedCase<3>&, double, double,
                            const WGField<3>&, int);
template std::pair<WGField<2>, SolveReport> solve_case<2>(const SimplicialMesh<2>&,
                                                          const ManufacturedCase<2>&, Algorithm,
                                                          double, double, const RunOptions&);
template std::pair<WGField<3>, SolveReport> solve_case<3>(const SimplicialMesh<3>&,
                                                          const ManufacturedCase<3>&, Algorithm,
                                                          double, double, const RunOptions&);

}  // namespace wg
