#pragma once

#include "wg/wg_core.hpp"

#include <Eigen/Sparse>

namespace wg {

using SparseMat = Eigen::SparseMatrix<double>;

/// Global symmetric system over the free (unconstrained) dofs. `coupling`
/// holds the free-by-constrained block used to lift Dirichlet data into the
/// right-hand side. `jacobi_diag` is the diagonal of the lambda-independent
/// part (mu grad-grad + stabilizer), kept for preconditioning.
template <int dim>
struct SparseSystem {
  SparseMat matrix;
  SparseMat coupling;
  Eigen::VectorXd rhs;
  Eigen::VectorXd jacobi_diag;
  DofMap<dim> dof_map;
  double mu = 0.0;
  double lambda = 0.0;
};

template <int dim>
using LocalMatrix = Eigen::Matrix<double, 2 * dim *(dim + 1), 2 * dim *(dim + 1)>;

/// Dense symmetric cell contribution of a_s over the cell's d(d+1) interior
/// dofs followed by its (d+1)*d facet dofs.
template <int dim>
struct LocalBlock {
  int cell = 0;
  LocalMatrix<dim> matrix;
};

template <int dim>
LocalBlock<dim> local_bilinear_block(const SimplicialMesh<dim>& mesh, int cell, double mu,
                                     double lambda);

/// Assembles a_s(.,.) with boundary facet dofs eliminated (rows and columns
/// dropped into `coupling`). rhs is left zero-sized until apply_rhs.
template <int dim>
SparseSystem<dim> assemble_bilinear(const SimplicialMesh<dim>& mesh, const DofMap<dim>& dof_map,
                                    double mu, double lambda);

/// Right-hand side (f, R_h(v)) over all dofs; interior slots are exactly zero.
template <int dim>
Eigen::VectorXd assemble_rhs_reconstructed(const SimplicialMesh<dim>& mesh, const NoDeduce<VecFn<dim>>& f,
                                           int quad_degree = 4);

/// Right-hand side (f, v_0) over all dofs; facet slots are exactly zero.
template <int dim>
Eigen::VectorXd assemble_rhs_standard(const SimplicialMesh<dim>& mesh, const NoDeduce<VecFn<dim>>& f,
                                      int quad_degree = 4);

/// Full-length vector with Q_b u on boundary facet dofs and zeros elsewhere.
template <int dim>
Eigen::VectorXd boundary_projection(const SimplicialMesh<dim>& mesh, const NoDeduce<VecFn<dim>>& u,
                                    int quad_degree = 6);

/// Reduces a full-length rhs to the free dofs and lifts Dirichlet data:
/// rhs_free = rhs[free] - coupling * g[constrained].
template <int dim>
void apply_rhs(SparseSystem<dim>& system, const Eigen::VectorXd& rhs_full,
               const Eigen::VectorXd& boundary_values);

/// Scatters a free-dof solution and the Dirichlet data back to a field.
template <int dim>
WGField<dim> expand_solution(const SimplicialMesh<dim>& mesh, const DofMap<dim>& dof_map,
                             const Eigen::VectorXd& x_free, const Eigen::VectorXd& boundary_values);

}  // namespace wg
