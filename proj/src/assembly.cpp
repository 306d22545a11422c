#include "wg/assembly.hpp"

#include <stdexcept>

namespace wg {

namespace {

// Scalar slot layout inside a cell: slots 0..d are the interior vertices,
// slots d+1..2d+1 the facets. Local dof = slot*dim + component.
template <int dim>
int local_dof(int slot, int comp) {
  return slot * dim + comp;
}

template <int dim>
int global_dof(const SimplicialMesh<dim>& mesh, const DofMap<dim>& dof_map, int cell, int slot,
               int comp) {
  if (slot <= dim) return dof_map.interior_dof(cell, slot, comp);
  return dof_map.facet_dof(mesh.cell_facets[cell][slot - (dim + 1)], comp);
}

}  // namespace

template <int dim>
LocalBlock<dim> local_bilinear_block(const SimplicialMesh<dim>& mesh, int cell, double mu,
                                     double lambda) {
  constexpr int n_interior = dim * (dim + 1);
  LocalBlock<dim> block;
  block.cell = cell;
  block.matrix.setZero();

  const double vol = mesh.cell_volume[cell];
  const auto& normals = mesh.outward_normals[cell];
  std::array<double, dim + 1> measures;
  for (int i = 0; i <= dim; ++i) measures[i] = mesh.facet_measure[mesh.cell_facets[cell][i]];

  // a(.,.): weak gradient and weak divergence couple only facet dofs.
  for (int i = 0; i <= dim; ++i) {
    for (int j = 0; j <= dim; ++j) {
      const double pair = measures[i] * measures[j] / vol;
      const double grad_coef = mu * pair * normals[i].dot(normals[j]);
      const double div_coef = (lambda + mu) * pair;
      auto sub = block.matrix.template block<dim, dim>(n_interior + i * dim, n_interior + j * dim);
      sub += grad_coef * Mat<dim>::Identity() + div_coef * normals[i] * normals[j].transpose();
    }
  }

  // s(.,.): for each facet i the jump pattern is 1/d on the facet's vertices
  // and -1 on the facet itself, identically per component.
  const double inv_h = 1.0 / mesh.cell_diameter[cell];
  for (int i = 0; i <= dim; ++i) {
    const double w = inv_h * measures[i];
    Eigen::Matrix<double, 2 * (dim + 1), 1> pattern = Eigen::Matrix<double, 2 * (dim + 1), 1>::Zero();
    for (int a = 0; a <= dim; ++a)
      if (a != i) pattern[a] = 1.0 / dim;
    pattern[dim + 1 + i] = -1.0;
    for (int s = 0; s < 2 * (dim + 1); ++s) {
      if (pattern[s] == 0.0) continue;
      for (int t = 0; t < 2 * (dim + 1); ++t) {
        if (pattern[t] == 0.0) continue;
        const double val = w * pattern[s] * pattern[t];
        for (int k = 0; k < dim; ++k)
          block.matrix(local_dof<dim>(s, k), local_dof<dim>(t, k)) += val;
      }
    }
  }
  return block;
}

template <int dim>
SparseSystem<dim> assemble_bilinear(const SimplicialMesh<dim>& mesh, const DofMap<dim>& dof_map,
                                    double mu, double lambda) {
  if (!(mu > 0.0)) throw std::invalid_argument("assemble_bilinear: mu must be positive");
  if (!(lambda > 0.0)) throw std::invalid_argument("assemble_bilinear: lambda must be positive");

  constexpr int n_local = 2 * dim * (dim + 1);
  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<Eigen::Triplet<double>> coupling_triplets;
  triplets.reserve(static_cast<size_t>(mesh.n_cells()) * n_local * n_local);

  SparseSystem<dim> system{SparseMat(), SparseMat(), Eigen::VectorXd(),
                           Eigen::VectorXd::Zero(dof_map.n_free), dof_map, mu, lambda};

  std::array<int, n_local> gdof;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const LocalBlock<dim> block = local_bilinear_block(mesh, c, mu, lambda);

    for (int s = 0; s < 2 * (dim + 1); ++s)
      for (int k = 0; k < dim; ++k)
        gdof[local_dof<dim>(s, k)] = global_dof(mesh, dof_map, c, s, k);

    for (int p = 0; p < n_local; ++p) {
      const int gi = gdof[p];
      const int fi = dof_map.free_index[gi];
      if (fi < 0) continue;
      for (int q = 0; q < n_local; ++q) {
        const double val = block.matrix(p, q);
        if (val == 0.0) continue;
        const int gj = gdof[q];
        const int fj = dof_map.free_index[gj];
        if (fj >= 0)
          triplets.emplace_back(fi, fj, val);
        else
          coupling_triplets.emplace_back(fi, dof_map.constrained_index[gj], val);
      }
    }

    // Diagonal of the lambda-free part, for preconditioning: drop the
    // (lambda+mu) grad-div contribution from facet diagonals.
    const double vol = mesh.cell_volume[c];
    const auto& normals = mesh.outward_normals[c];
    for (int s = 0; s < 2 * (dim + 1); ++s) {
      for (int k = 0; k < dim; ++k) {
        const int p = local_dof<dim>(s, k);
        const int fi = dof_map.free_index[gdof[p]];
        if (fi < 0) continue;
        double lam_part = 0.0;
        if (s > dim) {
          const int i = s - (dim + 1);
          const double m = mesh.facet_measure[mesh.cell_facets[c][i]];
          lam_part = (lambda + mu) * m * m / vol * normals[i][k] * normals[i][k];
        }
        system.jacobi_diag[fi] += block.matrix(p, p) - lam_part;
      }
    }
  }

  system.matrix.resize(dof_map.n_free, dof_map.n_free);
  system.matrix.setFromTriplets(triplets.begin(), triplets.end());
  system.coupling.resize(dof_map.n_free, dof_map.n_constrained);
  system.coupling.setFromTriplets(coupling_triplets.begin(), coupling_triplets.end());
  return system;
}

template <int dim>
Eigen::VectorXd assemble_rhs_reconstructed(const SimplicialMesh<dim>& mesh, const NoDeduce<VecFn<dim>>& f,
                                           int quad_degree) {
  const QuadratureRule rule = cell_rule(dim, quad_degree);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(total_dofs(mesh));
  const int facet_base = interior_block_size(mesh);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    CellGeometry<dim> geo(mesh, c);
    const double vol = mesh.cell_volume[c];
    const double scale = vol / reference_cell_measure(dim);
    // (f, R_T(v))_T = sum_i (v_b,i . n_i) int_T f . psi_i, and
    // int_T f . psi_i = (|e_i|/(d|T|)) (int f.x - p_i . int f).
    Vec<dim> f_int = Vec<dim>::Zero();
    double fx_int = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      const Vec<dim> x = geo.map(Vec<dim>(rule.points.row(q).transpose()));
      const Vec<dim> val = f(x);
      const double w = scale * rule.weights[q];
      f_int += w * val;
      fx_int += w * val.dot(x);
    }
    for (int i = 0; i <= dim; ++i) {
      const int facet = mesh.cell_facets[c][i];
      const double moment =
          mesh.facet_measure[facet] / (dim * vol) * (fx_int - mesh.vertices[mesh.cells[c][i]].dot(f_int));
      rhs.template segment<dim>(facet_base + facet * dim) += moment * mesh.outward_normals[c][i];
    }
  }
  return rhs;
}

template <int dim>
Eigen::VectorXd assemble_rhs_standard(const SimplicialMesh<dim>& mesh, const NoDeduce<VecFn<dim>>& f,
                                      int quad_degree) {
  const QuadratureRule rule = cell_rule(dim, quad_degree);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(total_dofs(mesh));
  for (int c = 0; c < mesh.n_cells(); ++c) {
    CellGeometry<dim> geo(mesh, c);
    const double scale = mesh.cell_volume[c] / reference_cell_measure(dim);
    for (int q = 0; q < rule.size(); ++q) {
      const Vec<dim> ref = rule.points.row(q).transpose();
      const auto lam = CellGeometry<dim>::reference_barycentric(ref);
      const Vec<dim> val = f(geo.map(ref));
      const double w = scale * rule.weights[q];
      for (int a = 0; a <= dim; ++a)
        rhs.template segment<dim>((c * (dim + 1) + a) * dim) += (w * lam[a]) * val;
    }
  }
  return rhs;
}

template <int dim>
Eigen::VectorXd boundary_projection(const SimplicialMesh<dim>& mesh, const NoDeduce<VecFn<dim>>& u,
                                    int quad_degree) {
  const QuadratureRule rule = facet_rule(dim, quad_degree);
  Eigen::VectorXd values = Eigen::VectorXd::Zero(total_dofs(mesh));
  const int facet_base = interior_block_size(mesh);
  for (int f = 0; f < mesh.n_facets(); ++f) {
    if (!mesh.facet_boundary[f]) continue;
    const Vec<dim> avg = integrate_on_facet(mesh, f, u, rule) / mesh.facet_measure[f];
    values.template segment<dim>(facet_base + f * dim) = avg;
  }
  return values;
}

template <int dim>
void apply_rhs(SparseSystem<dim>& system, const Eigen::VectorXd& rhs_full,
               const Eigen::VectorXd& boundary_values) {
  const DofMap<dim>& dm = system.dof_map;
  Eigen::VectorXd g(dm.n_constrained);
  Eigen::VectorXd b(dm.n_free);
  for (int dof = 0; dof < dm.n_total; ++dof) {
    if (dm.free_index[dof] >= 0)
      b[dm.free_index[dof]] = rhs_full[dof];
    else
      g[dm.constrained_index[dof]] = boundary_values[dof];
  }
  system.rhs = b - system.coupling * g;
}

template <int dim>
WGField<dim> expand_solution(const SimplicialMesh<dim>& mesh, const DofMap<dim>& dof_map,
                             const Eigen::VectorXd& x_free, const Eigen::VectorXd& boundary_values) {
  WGField<dim> field = make_zero_field(mesh);
  for (int dof = 0; dof < dof_map.n_total; ++dof) {
    const int fi = dof_map.free_index[dof];
    field.coeffs[dof] = (fi >= 0) ? x_free[fi] : boundary_values[dof];
  }
  return field;
}

template LocalBlock<2> local_bilinear_block<2>(const SimplicialMesh<2>&, int, double, double);
template LocalBlock<3> local_bilinear_block<3>(const SimplicialMesh<3>&, int, double, double);
template SparseSystem<2> assemble_bilinear<2>(const SimplicialMesh<2>&, const DofMap<2>&, double, double);
template SparseSystem<3> assemble_bilinear<3>(const SimplicialMesh<3>&, const DofMap<3>&, double, double);
template Eigen::VectorXd assemble_rhs_reconstructed<2>(const SimplicialMesh<2>&, const NoDeduce<VecFn<2>>&, int);
template Eigen::VectorXd assemble_rhs_reconstructed<3>(const SimplicialMesh<3>&, const NoDeduce<VecFn<3>>&, int);
template Eigen::VectorXd assemble_rhs_standard<2>(const SimplicialMesh<2>&, const NoDeduce<VecFn<2>>&, int);
template Eigen::VectorXd assemble_rhs_standard<3>(const SimplicialMesh<3>&, const NoDeduce<VecFn<3>>&, int);
template Eigen::VectorXd boundary_projection<2>(const SimplicialMesh<2>&, const NoDeduce<VecFn<2>>&, int);
template Eigen::VectorXd boundary_projection<3>(const SimplicialMesh<3>&, const NoDeduce<VecFn<3>>&, int);
template void apply_rhs<2>(SparseSystem<2>&, const Eigen::VectorXd&, const Eigen::VectorXd&);
template void apply_rhs<3>(SparseSystem<3>&, const Eigen::VectorXd&, const Eigen::VectorXd&);
template WGField<2> expand_solution<2>(const SimplicialMesh<2>&, const DofMap<2>&,
                                       const Eigen::VectorXd&, const Eigen::VectorXd&);
template WGField<3> expand_solution<3>(const SimplicialMesh<3>&, const DofMap<3>&,
                                       const Eigen::VectorXd&, const Eigen::VectorXd&);

}  // namespace wg
