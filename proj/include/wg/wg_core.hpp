#pragma once

#include "wg/mesh.hpp"
#include "wg/quadrature.hpp"

#include <functional>
#include <type_traits>

namespace wg {

template <int dim>
using ScalarFn = std::function<double(const Vec<dim>&)>;
template <int dim>
using VecFn = std::function<Vec<dim>(const Vec<dim>&)>;
template <int dim>
using MatFn = std::function<Mat<dim>(const Vec<dim>&)>;

// Blocks template deduction so callers can pass plain lambdas; dim is
// deduced from the mesh argument.
template <class T>
using NoDeduce = std::type_identity_t<T>;

/// Coefficient layout of the weak finite element space: per cell a vector P1
/// interior part in the vertex-nodal basis (d*(d+1) coefficients, component
/// fastest), followed by one constant d-vector per facet. Boundary facet
/// coefficients are the constrained (Dirichlet) set.
template <int dim>
struct DofMap {
  static constexpr int interior_per_cell = dim * (dim + 1);
  static constexpr int dofs_per_facet = dim;

  explicit DofMap(const SimplicialMesh<dim>& mesh);

  int n_cells = 0;
  int n_facets = 0;
  int n_total = 0;
  int n_free = 0;
  int n_constrained = 0;
  std::vector<int> free_index;         // -1 at constrained dofs
  std::vector<int> constrained_index;  // -1 at free dofs

  int interior_offset(int cell) const { return cell * interior_per_cell; }
  int interior_dof(int cell, int local_vertex, int comp) const {
    return interior_offset(cell) + local_vertex * dim + comp;
  }
  int facet_offset(int facet) const { return n_cells * interior_per_cell + facet * dofs_per_facet; }
  int facet_dof(int facet, int comp) const { return facet_offset(facet) + comp; }
  bool is_constrained(int dof) const { return free_index[dof] < 0; }
};

template <int dim>
int interior_block_size(const SimplicialMesh<dim>& mesh) {
  return dim * (dim + 1) * mesh.n_cells();
}

template <int dim>
int total_dofs(const SimplicialMesh<dim>& mesh) {
  return dim * (dim + 1) * mesh.n_cells() + dim * mesh.n_facets();
}

/// A field v = {v_0, v_b} as one coefficient vector in DofMap layout.
template <int dim>
struct WGField {
  Eigen::VectorXd coeffs;
};

template <int dim>
WGField<dim> make_zero_field(const SimplicialMesh<dim>& mesh) {
  return WGField<dim>{Eigen::VectorXd::Zero(total_dofs(mesh))};
}

template <int dim>
Vec<dim> interior_vertex_value(const SimplicialMesh<dim>&, const WGField<dim>& v, int cell,
                               int local_vertex) {
  return v.coeffs.template segment<dim>((cell * (dim + 1) + local_vertex) * dim);
}

template <int dim>
Vec<dim> facet_value(const SimplicialMesh<dim>& mesh, const WGField<dim>& v, int facet) {
  return v.coeffs.template segment<dim>(interior_block_size(mesh) + facet * dim);
}

/// Evaluates the interior P1 part of a field at a physical point of a cell.
template <int dim>
Vec<dim> interior_value_at(const SimplicialMesh<dim>& mesh, const WGField<dim>& v, int cell,
                           const Vec<dim>& x);

/// Per-cell weak divergence (1/|T|) sum_i |e_i| v_b,i . n_i.
template <int dim>
std::vector<double> weak_divergence(const SimplicialMesh<dim>& mesh, const WGField<dim>& v);

/// Per-cell weak gradient (1/|T|) sum_i |e_i| v_b,i (x) n_i.
template <int dim>
std::vector<Mat<dim>> weak_gradient(const SimplicialMesh<dim>& mesh, const WGField<dim>& v);

/// L2 projection onto cellwise vector P1 (interior block layout).
template <int dim>
Eigen::VectorXd project_Q0(const SimplicialMesh<dim>& mesh, const NoDeduce<VecFn<dim>>& u, int degree = 6);

/// L2 projection onto facetwise vector P0, i.e. facet averages (facet block layout).
template <int dim>
Eigen::VectorXd project_Qb(const SimplicialMesh<dim>& mesh, const NoDeduce<VecFn<dim>>& u, int degree = 6);

/// Combined projection {Q_0 u, Q_b u} as a WG field.
template <int dim>
WGField<dim> project_Qh(const SimplicialMesh<dim>& mesh, const NoDeduce<VecFn<dim>>& u, int degree = 6);

/// Per-cell mean values.
template <int dim>
std::vector<double> project_scalar_avg(const SimplicialMesh<dim>& mesh, const NoDeduce<ScalarFn<dim>>& rho,
                                       int degree = 6);

/// Per-cell componentwise mean of a matrix field.
template <int dim>
std::vector<Mat<dim>> project_tensor_avg(const SimplicialMesh<dim>& mesh, const NoDeduce<MatFn<dim>>& g,
                                         int degree = 6);

/// Coefficients c_i = v_b,i . n_i of the RT0 reconstruction
///   R_T(v)(x) = sum_i c_i psi_i(x),  psi_i(x) = (|e_i|/(d |T|)) (x - p_i),
/// where p_i is the vertex opposite facet i. psi_i has unit normal flux on
/// facet i and zero normal flux on the other facets.
template <int dim>
std::array<double, dim + 1> rt0_reconstruct(const SimplicialMesh<dim>& mesh, int cell,
                                            const std::array<Vec<dim>, dim + 1>& facet_values);

template <int dim>
std::array<double, dim + 1> rt0_from_field(const SimplicialMesh<dim>& mesh, const WGField<dim>& v,
                                           int cell);

template <int dim>
Vec<dim> rt0_eval(const SimplicialMesh<dim>& mesh, int cell, const std::array<double, dim + 1>& coeff,
                  const Vec<dim>& x);

template <int dim>
double rt0_divergence(const SimplicialMesh<dim>& mesh, int cell, const std::array<double, dim + 1>& coeff);

/// Q_b v_0 - v_b on one facet of a cell. Q_b of the linear interior part is
/// its value at the facet centroid, i.e. the mean of its vertex values there.
template <int dim>
Vec<dim> stabilizer_jump(const SimplicialMesh<dim>& mesh, const WGField<dim>& v, int cell,
                         int local_facet);

/// Discrete energy semi-norm: weak-gradient L2 norms plus h_T^{-1}-scaled
/// facet jumps, square-rooted. Exact for the piecewise-polynomial integrands.
template <int dim>
double triple_bar_norm(const SimplicialMesh<dim>& mesh, const WGField<dim>& v);

}  // namespace wg
