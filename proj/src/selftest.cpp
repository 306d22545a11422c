#include "wg/selftest.hpp"

#include "wg/bench.hpp"

#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace wg {

namespace {

struct Suite {
  SelftestReport report;

  void add(const std::string& name, bool pass, double worst, double bound) {
    std::ostringstream os;
    os << "worst " << worst << " vs bound " << bound;
    report.checks.push_back({name, pass, os.str()});
  }
  void add_note(const std::string& name, bool pass, const std::string& note) {
    report.checks.push_back({name, pass, note});
  }
};

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// int over the unit simplex in R^d of x^a y^b z^c.
double simplex_monomial(int d, int a, int b, int c) {
  return factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + d);
}

template <int dim>
WGField<dim> random_field(const SimplicialMesh<dim>& mesh, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  WGField<dim> field = make_zero_field(mesh);
  for (int i = 0; i < field.coeffs.size(); ++i) field.coeffs[i] = dist(rng);
  return field;
}

void check_quadrature(Suite& suite) {
  double worst_cell = 0.0;
  for (int dim : {2, 3}) {
    for (int degree : {2, 4, 6}) {
      const QuadratureRule rule = cell_rule(dim, degree);
      if (std::abs(rule.weights.sum() - reference_cell_measure(dim)) > 1e-14) {
        suite.add_note("quadrature.cell_measure", false, "weight sum off");
        return;
      }
      if (rule.weights.minCoeff() <= 0.0) {
        suite.add_note("quadrature.positive_weights", false, "nonpositive weight");
        return;
      }
      for (int a = 0; a <= degree; ++a) {
        for (int b = 0; a + b <= degree; ++b) {
          for (int c = 0; a + b + c <= degree * (dim == 3 ? 1 : 0); ++c) {
            double approx = 0.0;
            for (int q = 0; q < rule.size(); ++q) {
              double term = std::pow(rule.points(q, 0), a) * std::pow(rule.points(q, 1), b);
              if (dim == 3) term *= std::pow(rule.points(q, 2), c);
              approx += rule.weights[q] * term;
            }
            const double exact = simplex_monomial(dim, a, b, dim == 3 ? c : 0);
            worst_cell = std::max(worst_cell, std::abs(approx - exact) / exact);
          }
        }
      }
    }
  }
  suite.add("quadrature.cell_monomial_exactness", worst_cell <= 1e-12, worst_cell, 1e-12);

  double worst_facet = 0.0;
  for (int degree : {2, 4, 5, 6}) {
    const QuadratureRule seg = facet_rule(2, degree);
    for (int a = 0; a <= degree; ++a) {
      double approx = 0.0;
      for (int q = 0; q < seg.size(); ++q) approx += seg.weights[q] * std::pow(seg.points(q, 0), a);
      worst_facet = std::max(worst_facet, std::abs(approx - 1.0 / (a + 1)) * (a + 1));
    }
    const QuadratureRule tri = facet_rule(3, degree);
    for (int a = 0; a <= degree; ++a) {
      for (int b = 0; a + b <= degree; ++b) {
        double approx = 0.0;
        for (int q = 0; q < tri.size(); ++q)
          approx += tri.weights[q] * std::pow(tri.points(q, 0), a) * std::pow(tri.points(q, 1), b);
        const double exact = simplex_monomial(2, a, b, 0);
        worst_facet = std::max(worst_facet, std::abs(approx - exact) / exact);
      }
    }
  }
  suite.add("quadrature.facet_monomial_exactness", worst_facet <= 1e-12, worst_facet, 1e-12);

  bool rejected = false;
  try {
    cell_rule(2, 0);
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  suite.add_note("quadrature.rejects_unsupported_degree", rejected, rejected ? "ok" : "no throw");
}

template <int dim>
void check_mesh_invariants(Suite& suite, const SimplicialMesh<dim>& mesh, const std::string& tag) {
  double worst_closed = 0.0, worst_outward = 0.0;
  bool facet_sets_ok = true;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    Vec<dim> closed = Vec<dim>::Zero();
    for (int i = 0; i <= dim; ++i) {
      const int f = mesh.cell_facets[c][i];
      closed += mesh.facet_measure[f] * mesh.outward_normals[c][i];
      for (int v : mesh.facets[f]) {
        const double side =
            (mesh.vertices[mesh.cells[c][i]] - mesh.vertices[v]).dot(mesh.outward_normals[c][i]);
        worst_outward = std::max(worst_outward, side);
      }
      std::set<int> expect(mesh.cells[c].begin(), mesh.cells[c].end());
      expect.erase(mesh.cells[c][i]);
      facet_sets_ok &= std::set<int>(mesh.facets[f].begin(), mesh.facets[f].end()) == expect;
    }
    worst_closed = std::max(worst_closed, closed.norm());
  }
  suite.add("mesh.closed_surface." + tag, worst_closed <= 1e-12, worst_closed, 1e-12);
  suite.add("mesh.outward_normals." + tag, worst_outward < 0.0, worst_outward, 0.0);
  suite.add_note("mesh.facet_opposite_vertex." + tag, facet_sets_ok, facet_sets_ok ? "ok" : "mismatch");

  std::vector<int> use(mesh.n_facets(), 0);
  for (int c = 0; c < mesh.n_cells(); ++c)
    for (int f : mesh.cell_facets[c]) ++use[f];
  bool counts_ok = true;
  for (int f = 0; f < mesh.n_facets(); ++f)
    counts_ok &= use[f] == (mesh.facet_boundary[f] ? 1 : 2);
  suite.add_note("mesh.facet_sharing." + tag, counts_ok, counts_ok ? "ok" : "bad count");

  long double vol = 0.0;
  double min_vol = 1.0;
  for (double v : mesh.cell_volume) {
    vol += v;
    min_vol = std::min(min_vol, v);
  }
  const double vol_err = std::abs(static_cast<double>(vol) - 1.0);
  suite.add("mesh.volume_sum." + tag, vol_err <= 1e-12 && min_vol > 0.0, vol_err, 1e-12);
}

void check_meshes(Suite& suite, bool full) {
  for (int n : {1, 2, 8, 16}) check_mesh_invariants(suite, build_uniform_triangle_mesh(n), "tri" + std::to_string(n));
  for (int level : {1, 2, 3}) check_mesh_invariants(suite, build_uniform_tet_mesh(level), "tet" + std::to_string(level));
  if (full) {
    check_mesh_invariants(suite, build_uniform_triangle_mesh(128), "tri128");
    check_mesh_invariants(suite, build_uniform_tet_mesh(6), "tet6");
  }

  const double h8 = mesh_size(build_uniform_triangle_mesh(8));
  const double h16 = mesh_size(build_uniform_triangle_mesh(16));
  const double h2 = mesh_size(build_uniform_tet_mesh(2));
  const double h3 = mesh_size(build_uniform_tet_mesh(3));
  const double worst =
      std::max(std::abs(h16 - h8 / 2) / h8, std::abs(h3 - h2 / 2) / h2);
  suite.add("mesh.refinement_halves_h", worst <= 1e-12, worst, 1e-12);
}

template <int dim>
void check_weak_operators(Suite& suite, const SimplicialMesh<dim>& mesh, std::mt19937& rng,
                          int n_fields, const std::string& tag) {
  double worst_trace = 0.0, worst_divpres = 0.0, worst_flux = 0.0, worst_jump = 0.0;
  double worst_facet_only = 0.0;
  const QuadratureRule frule = facet_rule(dim, 4);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < n_fields; ++trial) {
    WGField<dim> v = random_field(mesh, rng);
    const auto div = weak_divergence(mesh, v);
    const auto grad = weak_gradient(mesh, v);

    // Weak operators depend only on facet coefficients.
    WGField<dim> w = v;
    for (int i = 0; i < interior_block_size(mesh); ++i) w.coeffs[i] = dist(rng);
    const auto div_w = weak_divergence(mesh, w);

    for (int c = 0; c < mesh.n_cells(); ++c) {
      worst_trace = std::max(worst_trace, std::abs(grad[c].trace() - div[c]));
      worst_facet_only = std::max(worst_facet_only, std::abs(div_w[c] - div[c]));
      const auto coeff = rt0_from_field(mesh, v, c);
      worst_divpres = std::max(worst_divpres, std::abs(rt0_divergence(mesh, c, coeff) - div[c]));
      for (int i = 0; i <= dim; ++i) {
        const int f = mesh.cell_facets[c][i];
        const Vec<dim> vb = facet_value(mesh, v, f);
        const Vec<dim> n = mesh.outward_normals[c][i];
        for (int q = 0; q < frule.size(); ++q) {
          Vec<dim> x = mesh.vertices[mesh.facets[f][0]];
          for (int j = 0; j < dim - 1; ++j)
            x += frule.points(q, j) * (mesh.vertices[mesh.facets[f][j + 1]] - mesh.vertices[mesh.facets[f][0]]);
          worst_flux = std::max(worst_flux,
                                std::abs(rt0_eval(mesh, c, coeff, x).dot(n) - vb.dot(n)));
        }
        // Jump against the facet-quadrature average of v_0 - v_b.
        const Vec<dim> oracle = integrate_on_facet(
            mesh, f,
            [&](const Vec<dim>& p) { return Vec<dim>(interior_value_at(mesh, v, c, p) - vb); },
            frule) / mesh.facet_measure[f];
        worst_jump = std::max(worst_jump, (stabilizer_jump(mesh, v, c, i) - oracle).norm());
      }
    }
  }
  suite.add("wg.trace_identity." + tag, worst_trace <= 1e-13, worst_trace, 1e-13);
  suite.add("wg.divergence_preservation." + tag, worst_divpres <= 1e-12, worst_divpres, 1e-12);
  suite.add("wg.rt0_flux_reproduction." + tag, worst_flux <= 1e-12, worst_flux, 1e-12);
  suite.add("wg.stabilizer_jump_oracle." + tag, worst_jump <= 1e-12, worst_jump, 1e-12);
  suite.add("wg.weak_ops_facet_only." + tag, worst_facet_only == 0.0, worst_facet_only, 0.0);
}

template <int dim>
double commutation_gap(const SimplicialMesh<dim>& mesh, const VecFn<dim>& u, const MatFn<dim>& grad,
                       const ScalarFn<dim>& div) {
  const WGField<dim> qh = project_Qh(mesh, u);
  const auto wgrad = weak_gradient(mesh, qh);
  const auto wdiv = weak_divergence(mesh, qh);
  const auto tensor = project_tensor_avg(mesh, grad);
  const auto scalar = project_scalar_avg(mesh, div);
  double worst = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    worst = std::max(worst, (wgrad[c] - tensor[c]).template lpNorm<Eigen::Infinity>());
    worst = std::max(worst, std::abs(wdiv[c] - scalar[c]));
  }
  return worst;
}

void check_commutation(Suite& suite) {
  {
    const auto mesh = build_uniform_triangle_mesh(4);
    Mat<2> a;
    a << 1, 2, 3, -1;
    const double gap = commutation_gap<2>(
        mesh, [&](const Vec<2>& x) { return Vec<2>(a * x); },
        [&](const Vec<2>&) { return a; }, [&](const Vec<2>&) { return a.trace(); });
    suite.add("wg.commutation_linear_2d", gap <= 1e-12, gap, 1e-12);
  }
  {
    const auto mesh = build_uniform_tet_mesh(2);
    Mat<3> a;
    a << 1, 2, 0, 3, -1, 1, 0, 1, 2;
    const double gap = commutation_gap<3>(
        mesh, [&](const Vec<3>& x) { return Vec<3>(a * x); },
        [&](const Vec<3>&) { return a; }, [&](const Vec<3>&) { return a.trace(); });
    suite.add("wg.commutation_linear_3d", gap <= 1e-12, gap, 1e-12);
  }
  {
    const auto mesh = build_uniform_triangle_mesh(16);
    const auto mc = find_case_2d("ex2d1");
    const double gap = commutation_gap<2>(
        mesh, [&](const Vec<2>& x) { return mc.u(x, 1, 1); },
        [&](const Vec<2>& x) { return mc.grad_u(x, 1, 1); },
        [&](const Vec<2>& x) { return mc.div_u(x, 1, 1); });
    suite.add("wg.commutation_trig_2d_n16", gap <= 1e-9, gap, 1e-9);
  }
}

void check_rt0_constant(Suite& suite) {
  const auto mesh = build_uniform_triangle_mesh(3);
  const QuadratureRule rule = cell_rule(2, 2);
  const Vec<2> c(0.7, -0.3);
  double worst = 0.0;
  for (int cell = 0; cell < mesh.n_cells(); ++cell) {
    std::array<Vec<2>, 3> values;
    values.fill(c);
    const auto coeff = rt0_reconstruct(mesh, cell, values);
    CellGeometry<2> geo(mesh, cell);
    for (int q = 0; q < rule.size(); ++q) {
      const Vec<2> x = geo.map(Vec<2>(rule.points.row(q).transpose()));
      worst = std::max(worst, (rt0_eval(mesh, cell, coeff, x) - c).norm());
    }
  }
  suite.add("wg.rt0_constant_reproduction", worst <= 1e-13, worst, 1e-13);
}

void check_reconstruction_proximity(Suite& suite) {
  const auto mc = find_case_2d("ex2d1");
  std::vector<double> norms;
  for (int n : {8, 16, 32, 64}) {
    const auto mesh = build_uniform_triangle_mesh(n);
    const WGField<2> qh = project_Qh(mesh, [&](const Vec<2>& x) { return mc.u(x, 1, 1); });
    const QuadratureRule rule = cell_rule(2, 2);
    double total = 0.0;
    for (int c = 0; c < mesh.n_cells(); ++c) {
      const auto coeff = rt0_from_field(mesh, qh, c);
      total += integrate_on_cell(
          mesh, c,
          [&](const Vec<2>& x) {
            return (rt0_eval(mesh, c, coeff, x) - interior_value_at(mesh, qh, c, x)).squaredNorm();
          },
          rule);
    }
    norms.push_back(std::sqrt(total));
  }
  double worst_rate = 10.0;
  for (size_t i = 1; i < norms.size(); ++i)
    worst_rate = std::min(worst_rate, std::log2(norms[i - 1] / norms[i]));
  suite.add("wg.reconstruction_proximity_rate", worst_rate >= 0.9, worst_rate, 0.9);
}

void check_assembly(Suite& suite) {
  std::mt19937 rng(31415);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  // Symmetry and SPD-ness across meshes and lambda values.
  bool symmetric = true, spd = true;
  for (int n : {8, 16, 32}) {
    const auto mesh = build_uniform_triangle_mesh(n);
    const DofMap<2> dof_map(mesh);
    for (double lambda : {1.0, 1e4, 1e8}) {
      const auto system = assemble_bilinear(mesh, dof_map, 1.0, lambda);
      SparseMat diff = SparseMat(system.matrix.transpose()) - system.matrix;
      double asym = 0.0;
      for (int k = 0; k < diff.outerSize(); ++k)
        for (SparseMat::InnerIterator it(diff, k); it; ++it) asym = std::max(asym, std::abs(it.value()));
      symmetric &= asym == 0.0;
      Eigen::SimplicialLDLT<SparseMat> ldlt(system.matrix);
      spd &= ldlt.info() == Eigen::Success && ldlt.vectorD().minCoeff() > 0.0;
    }
  }
  {
    const auto mesh = build_uniform_tet_mesh(2);
    const DofMap<3> dof_map(mesh);
    const auto system = assemble_bilinear(mesh, dof_map, 1.0, 1e8);
    SparseMat diff = SparseMat(system.matrix.transpose()) - system.matrix;
    double asym = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
      for (SparseMat::InnerIterator it(diff, k); it; ++it) asym = std::max(asym, std::abs(it.value()));
    symmetric &= asym == 0.0;
    Eigen::SimplicialLDLT<SparseMat> ldlt(system.matrix);
    spd &= ldlt.info() == Eigen::Success && ldlt.vectorD().minCoeff() > 0.0;
  }
  suite.add_note("assembly.exact_symmetry", symmetric, symmetric ? "ok" : "asymmetric");
  suite.add_note("assembly.spd_cholesky", spd, spd ? "ok" : "not SPD");

  // Coercivity x'Ax >= min(mu,1) |||v|||^2 against the independent norm.
  const auto mesh = build_uniform_triangle_mesh(8);
  const DofMap<2> dof_map(mesh);
  double worst_margin = 1.0;
  for (double lambda : {1.0, 1e8}) {
    const auto system = assemble_bilinear(mesh, dof_map, 1.0, lambda);
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd x(dof_map.n_free);
      for (int i = 0; i < x.size(); ++i) x[i] = dist(rng);
      WGField<2> v = make_zero_field(mesh);
      for (int dof = 0; dof < dof_map.n_total; ++dof)
        if (dof_map.free_index[dof] >= 0) v.coeffs[dof] = x[dof_map.free_index[dof]];
      const double quad_form = x.dot(system.matrix * x);
      const double norm2 = std::pow(triple_bar_norm(mesh, v), 2);
      worst_margin = std::min(worst_margin, (quad_form - norm2) / std::max(1.0, quad_form));
    }
  }
  suite.add("assembly.coercivity", worst_margin >= -1e-10, worst_margin, -1e-10);

  // RHS structure: the reconstructed load lives on facet dofs, the standard
  // load on interior dofs.
  const auto f = [](const Vec<2>& x) { return Vec<2>(std::sin(x.x()), x.y()); };
  const Eigen::VectorXd rhs_new = assemble_rhs_reconstructed(mesh, f, 4);
  const Eigen::VectorXd rhs_std = assemble_rhs_standard(mesh, f, 4);
  const double interior_part = rhs_new.head(interior_block_size(mesh)).cwiseAbs().maxCoeff();
  const double facet_part = rhs_std.tail(2 * mesh.n_facets()).cwiseAbs().maxCoeff();
  suite.add("assembly.rhs_new_interior_zero", interior_part == 0.0, interior_part, 0.0);
  suite.add("assembly.rhs_standard_facet_zero", facet_part == 0.0, facet_part, 0.0);
}

void check_solver(Suite& suite) {
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd m(50, 50);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) m(i, j) = dist(rng);
  Eigen::MatrixXd dense = m.transpose() * m + Eigen::MatrixXd::Identity(50, 50);
  SparseMat sparse = dense.sparseView();
  Eigen::VectorXd b(50);
  for (int i = 0; i < 50; ++i) b[i] = dist(rng);
  const Eigen::VectorXd oracle = dense.ldlt().solve(b);

  SolveOptions cg_opt;
  cg_opt.method = SolveMethod::cg;
  const auto [x_cg, rep_cg] = solve_spd(sparse, b, cg_opt);
  SolveOptions ch_opt;
  ch_opt.method = SolveMethod::cholesky;
  const auto [x_ch, rep_ch] = solve_spd(sparse, b, ch_opt);
  const double worst =
      std::max((x_cg - oracle).norm() / oracle.norm(), (x_ch - oracle).norm() / oracle.norm());
  suite.add("solver.dense_oracle", rep_cg.ok() && rep_ch.ok() && worst <= 1e-10, worst, 1e-10);
}

void check_monotone_convergence(Suite& suite) {
  const ConvergenceReport report =
      run_convergence("ex2d1", Algorithm::reconstructed, 1.0, 1.0, {8, 16, 32});
  bool monotone = true;
  for (size_t i = 1; i < report.rows.size(); ++i)
    monotone &= report.rows[i].energy_error < report.rows[i - 1].energy_error;
  suite.add_note("bench.energy_error_monotone", monotone, monotone ? "ok" : "not monotone");
}

}  // namespace

SelftestReport run_property_suite(bool full) {
  Suite suite;
  check_quadrature(suite);
  check_meshes(suite, full);

  std::mt19937 rng(1234);
  // 1000 random fields across a 2D and a 3D mesh.
  check_weak_operators<2>(suite, build_uniform_triangle_mesh(4), rng, full ? 500 : 50, "2d");
  check_weak_operators<3>(suite, build_uniform_tet_mesh(2), rng, full ? 500 : 50, "3d");

  check_commutation(suite);
  check_rt0_constant(suite);
  check_reconstruction_proximity(suite);
  check_assembly(suite);
  check_solver(suite);
  check_monotone_convergence(suite);
  return suite.report;
}

}  // namespace wg
