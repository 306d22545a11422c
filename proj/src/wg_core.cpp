#include "wg/wg_core.hpp"

namespace wg {

template <int dim>
DofMap<dim>::DofMap(const SimplicialMesh<dim>& mesh)
    : n_cells(mesh.n_cells()), n_facets(mesh.n_facets()) {
  n_total = interior_per_cell * n_cells + dofs_per_facet * n_facets;
  free_index.assign(n_total, -1);
  constrained_index.assign(n_total, -1);
  n_free = 0;
  n_constrained = 0;
  const int facet_base = interior_per_cell * n_cells;
  for (int dof = 0; dof < facet_base; ++dof) free_index[dof] = n_free++;
  for (int f = 0; f < n_facets; ++f) {
    for (int k = 0; k < dim; ++k) {
      const int dof = facet_base + f * dim + k;
      if (mesh.facet_boundary[f])
        constrained_index[dof] = n_constrained++;
      else
        free_index[dof] = n_free++;
    }
  }
}

template <int dim>
Vec<dim> interior_value_at(const SimplicialMesh<dim>& mesh, const WGField<dim>& v, int cell,
                           const Vec<dim>& x) {
  CellGeometry<dim> geo(mesh, cell);
  const auto lam = geo.barycentric(x);
  Vec<dim> val = Vec<dim>::Zero();
  for (int a = 0; a <= dim; ++a) val += lam[a] * interior_vertex_value(mesh, v, cell, a);
  return val;
}

template <int dim>
std::vector<double> weak_divergence(const SimplicialMesh<dim>& mesh, const WGField<dim>& v) {
  std::vector<double> div(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    double s = 0.0;
    for (int i = 0; i <= dim; ++i) {
      const int f = mesh.cell_facets[c][i];
      s += mesh.facet_measure[f] * facet_value(mesh, v, f).dot(mesh.outward_normals[c][i]);
    }
    div[c] = s / mesh.cell_volume[c];
  }
  return div;
}

template <int dim>
std::vector<Mat<dim>> weak_gradient(const SimplicialMesh<dim>& mesh, const WGField<dim>& v) {
  std::vector<Mat<dim>> grad(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    Mat<dim> g = Mat<dim>::Zero();
    for (int i = 0; i <= dim; ++i) {
      const int f = mesh.cell_facets[c][i];
      g += mesh.facet_measure[f] * facet_value(mesh, v, f) * mesh.outward_normals[c][i].transpose();
    }
    grad[c] = g / mesh.cell_volume[c];
  }
  return grad;
}

template <int dim>
Eigen::VectorXd project_Q0(const SimplicialMesh<dim>& mesh, const NoDeduce<VecFn<dim>>& u, int degree) {
  const QuadratureRule rule = cell_rule(dim, degree);
  Eigen::VectorXd out(interior_block_size(mesh));
  for (int c = 0; c < mesh.n_cells(); ++c) {
    CellGeometry<dim> geo(mesh, c);
    const double vol = mesh.cell_volume[c];
    const double scale = vol / reference_cell_measure(dim);
    Eigen::Matrix<double, dim + 1, dim> b = Eigen::Matrix<double, dim + 1, dim>::Zero();
    for (int q = 0; q < rule.size(); ++q) {
      const Vec<dim> ref = rule.points.row(q).transpose();
      const auto lam = CellGeometry<dim>::reference_barycentric(ref);
      const Vec<dim> val = u(geo.map(ref));
      const double w = scale * rule.weights[q];
      for (int a = 0; a <= dim; ++a) b.row(a) += (w * lam[a]) * val.transpose();
    }
    // P1 mass matrix is |T|/((d+1)(d+2)) (I + ones); invert in closed form.
    const double kappa = (dim + 1) * (dim + 2) / vol;
    const Eigen::Matrix<double, 1, dim> colsum = b.colwise().sum();
    for (int a = 0; a <= dim; ++a) {
      const Eigen::Matrix<double, 1, dim> ca = kappa * (b.row(a) - colsum / (dim + 2));
      out.template segment<dim>((c * (dim + 1) + a) * dim) = ca.transpose();
    }
  }
  return out;
}

template <int dim>
Eigen::VectorXd project_Qb(const SimplicialMesh<dim>& mesh, const NoDeduce<VecFn<dim>>& u, int degree) {
  const QuadratureRule rule = facet_rule(dim, degree);
  Eigen::VectorXd out(dim * mesh.n_facets());
  for (int f = 0; f < mesh.n_facets(); ++f) {
    const Vec<dim> avg = integrate_on_facet(mesh, f, u, rule) / mesh.facet_measure[f];
    out.template segment<dim>(f * dim) = avg;
  }
  return out;
}

template <int dim>
WGField<dim> project_Qh(const SimplicialMesh<dim>& mesh, const NoDeduce<VecFn<dim>>& u, int degree) {
  WGField<dim> field;
  field.coeffs.resize(total_dofs(mesh));
  field.coeffs.head(interior_block_size(mesh)) = project_Q0(mesh, u, degree);
  field.coeffs.tail(dim * mesh.n_facets()) = project_Qb(mesh, u, degree);
  return field;
}

template <int dim>
std::vector<double> project_scalar_avg(const SimplicialMesh<dim>& mesh, const NoDeduce<ScalarFn<dim>>& rho,
                                       int degree) {
  const QuadratureRule rule = cell_rule(dim, degree);
  std::vector<double> avg(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c)
    avg[c] = integrate_on_cell(mesh, c, rho, rule) / mesh.cell_volume[c];
  return avg;
}

template <int dim>
std::vector<Mat<dim>> project_tensor_avg(const SimplicialMesh<dim>& mesh, const NoDeduce<MatFn<dim>>& g,
                                         int degree) {
  const QuadratureRule rule = cell_rule(dim, degree);
  std::vector<Mat<dim>> avg(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c)
    avg[c] = integrate_on_cell(mesh, c, g, rule) / mesh.cell_volume[c];
  return avg;
}

template <int dim>
std::array<double, dim + 1> rt0_reconstruct(const SimplicialMesh<dim>& mesh, int cell,
                                            const std::array<Vec<dim>, dim + 1>& facet_values) {
  std::array<double, dim + 1> coeff;
  for (int i = 0; i <= dim; ++i) coeff[i] = facet_values[i].dot(mesh.outward_normals[cell][i]);
  return coeff;
}

template <int dim>
std::array<double, dim + 1> rt0_from_field(const SimplicialMesh<dim>& mesh, const WGField<dim>& v,
                                           int cell) {
  std::array<Vec<dim>, dim + 1> values;
  for (int i = 0; i <= dim; ++i) values[i] = facet_value(mesh, v, mesh.cell_facets[cell][i]);
  return rt0_reconstruct(mesh, cell, values);
}

template <int dim>
Vec<dim> rt0_eval(const SimplicialMesh<dim>& mesh, int cell, const std::array<double, dim + 1>& coeff,
                  const Vec<dim>& x) {
  Vec<dim> val = Vec<dim>::Zero();
  for (int i = 0; i <= dim; ++i) {
    const double factor = mesh.facet_measure[mesh.cell_facets[cell][i]] / (dim * mesh.cell_volume[cell]);
    val += coeff[i] * factor * (x - mesh.vertices[mesh.cells[cell][i]]);
  }
  return val;
}

template <int dim>
double rt0_divergence(const SimplicialMesh<dim>& mesh, int cell,
                      const std::array<double, dim + 1>& coeff) {
  double s = 0.0;
  for (int i = 0; i <= dim; ++i) s += coeff[i] * mesh.facet_measure[mesh.cell_facets[cell][i]];
  return s / mesh.cell_volume[cell];
}

template <int dim>
Vec<dim> stabilizer_jump(const SimplicialMesh<dim>& mesh, const WGField<dim>& v, int cell,
                         int local_facet) {
  Vec<dim> mean = Vec<dim>::Zero();
  for (int a = 0; a <= dim; ++a)
    if (a != local_facet) mean += interior_vertex_value(mesh, v, cell, a);
  mean /= dim;
  return mean - facet_value(mesh, v, mesh.cell_facets[cell][local_facet]);
}

template <int dim>
double triple_bar_norm(const SimplicialMesh<dim>& mesh, const WGField<dim>& v) {
  double total = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    Mat<dim> g = Mat<dim>::Zero();
    for (int i = 0; i <= dim; ++i) {
      const int f = mesh.cell_facets[c][i];
      g += mesh.facet_measure[f] * facet_value(mesh, v, f) * mesh.outward_normals[c][i].transpose();
    }
    total += g.squaredNorm() / mesh.cell_volume[c];  // |T| * ||g/|T|||_F^2
    double jumps = 0.0;
    for (int i = 0; i <= dim; ++i)
      jumps += mesh.facet_measure[mesh.cell_facets[c][i]] * stabilizer_jump(mesh, v, c, i).squaredNorm();
    total += jumps / mesh.cell_diameter[c];
  }
  return std::sqrt(total);
}

template struct DofMap<2>;
template struct DofMap<3>;
template Vec<2> interior_value_at<2>(const SimplicialMesh<2>&, const WGField<2>&, int, const Vec<2>&);
template Vec<3> interior_value_at<3>(const SimplicialMesh<3>&, const WGField<3>&, int, const Vec<3>&);
template std::vector<double> weak_divergence<2>(const SimplicialMesh<2>&, const WGField<2>&);
template std::vector<double> weak_divergence<3>(const SimplicialMesh<3>&, const WGField<3>&);
template std::vector<Mat<2>> weak_gradient<2>(const SimplicialMesh<2>&, const WGField<2>&);
template std::vector<Mat<3>> weak_gradient<3>(const SimplicialMesh<3>&, const WGField<3>&);
template Eigen::VectorXd project_Q0<2>(const SimplicialMesh<2>&, const NoDeduce<VecFn<2>>&, int);
template Eigen::VectorXd project_Q0<3>(const SimplicialMesh<3>&, const NoDeduce<VecFn<3>>&, int);
template Eigen::VectorXd project_Qb<2>(const SimplicialMesh<2>&, const NoDeduce<VecFn<2>>&, int);
template Eigen::VectorXd project_Qb<3>(const SimplicialMesh<3>&, const NoDeduce<VecFn<3>>&, int);
template WGField<2> project_Qh<2>(const SimplicialMesh<2>&, const NoDeduce<VecFn<2>>&, int);
template WGField<3> project_Qh<3>(const SimplicialMesh<3>&, const NoDeduce<VecFn<3>>&, int);
template std::vector<double> project_scalar_avg<2>(const SimplicialMesh<2>&, const NoDeduce<ScalarFn<2>>&, int);
template std::vector<double> project_scalar_avg<3>(const SimplicialMesh<3>&, const NoDeduce<ScalarFn<3>>&, int);
template std::vector<Mat<2>> project_tensor_avg<2>(const SimplicialMesh<2>&, const NoDeduce<MatFn<2>>&, int);
template std::vector<Mat<3>> project_tensor_avg<3>(const SimplicialMesh<3>&, const NoDeduce<MatFn<3>>&, int);
template std::array<double, 3> rt0_reconstruct<2>(const SimplicialMesh<2>&, int,
                                                  const std::array<Vec<2>, 3>&);
template std::array<double, 4> rt0_reconstruct<3>(const SimplicialMesh<3>&, int,
                                                  const std::array<Vec<3>, 4>&);
template std::array<double, 3> rt0_from_field<2>(const SimplicialMesh<2>&, const WGField<2>&, int);
template std::array<double, 4> rt0_from_field<3>(const SimplicialMesh<3>&, const WGField<3>&, int);
template Vec<2> rt0_eval<2>(const SimplicialMesh<2>&, int, const std::array<double, 3>&, const Vec<2>&);
template Vec<3> rt0_eval<3>(const SimplicialMesh<3>&, int, const std::array<double, 4>&, const Vec<3>&);
template double rt0_divergence<2>(const SimplicialMesh<2>&, int, const std::array<double, 3>&);
template double rt0_divergence<3>(const SimplicialMesh<3>&, int, const std::array<double, 4>&);
template Vec<2> stabilizer_jump<2>(const SimplicialMesh<2>&, const WGField<2>&, int, int);
template Vec<3> stabilizer_jump<3>(const SimplicialMesh<3>&, const WGField<3>&, int, int);
template double triple_bar_norm<2>(const SimplicialMesh<2>&, const WGField<2>&);
template double triple_bar_norm<3>(const SimplicialMesh<3>&, const WGField<3>&);

}  // namespace wg
