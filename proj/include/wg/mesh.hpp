#pragma once

#include <Eigen/Dense>

#include <array>
#include <iosfwd>
#include <vector>

namespace wg {

template <int dim>
using Vec = Eigen::Matrix<double, dim, 1>;

template <int dim>
using Mat = Eigen::Matrix<double, dim, dim>;

/// Simplicial mesh of the unit square/cube with full cell-facet connectivity.
/// Facet i of a cell is opposite local vertex i, so it carries every cell
/// vertex except vertex i. Facets are stored once, keyed by their sorted
/// vertex ids; interior facets are shared by exactly two cells.
template <int dim>
struct SimplicialMesh {
  static_assert(dim == 2 || dim == 3, "only 2D and 3D meshes are supported");
  static constexpr int vertices_per_cell = dim + 1;
  static constexpr int vertices_per_facet = dim;

  std::vector<Vec<dim>> vertices;
  std::vector<std::array<int, dim + 1>> cells;
  std::vector<std::array<int, dim>> facets;           // sorted vertex ids
  std::vector<std::array<int, dim + 1>> cell_facets;  // facet i opposite local vertex i
  std::vector<char> facet_boundary;
  std::vector<double> cell_volume;
  std::vector<double> facet_measure;   // length (2D) or area (3D)
  std::vector<std::array<Vec<dim>, dim + 1>> outward_normals;  // per cell, per local facet
  std::vector<double> cell_diameter;   // longest edge
  std::vector<Vec<dim>> facet_centroid;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_cells() const { return static_cast<int>(cells.size()); }
  int n_facets() const { return static_cast<int>(facets.size()); }

  Vec<dim> cell_centroid(int cell) const {
    Vec<dim> c = Vec<dim>::Zero();
    for (int v : cells[cell]) c += vertices[v];
    return c / (dim + 1);
  }
};

/// Affine reference-to-physical map of one cell, x = p0 + B*xhat.
/// Barycentric coordinates are affine-invariant, so for points coming from a
/// reference quadrature rule they can be read off the reference coordinates.
template <int dim>
struct CellGeometry {
  Vec<dim> p0;
  Mat<dim> jacobian;

  CellGeometry(const SimplicialMesh<dim>& mesh, int cell) {
    const auto& cv = mesh.cells[cell];
    p0 = mesh.vertices[cv[0]];
    for (int j = 0; j < dim; ++j) jacobian.col(j) = mesh.vertices[cv[j + 1]] - p0;
  }

  Vec<dim> map(const Vec<dim>& ref) const { return p0 + jacobian * ref; }

  static Eigen::Matrix<double, dim + 1, 1> reference_barycentric(const Vec<dim>& ref) {
    Eigen::Matrix<double, dim + 1, 1> lam;
    lam[0] = 1.0;
    for (int j = 0; j < dim; ++j) {
      lam[j + 1] = ref[j];
      lam[0] -= ref[j];
    }
    return lam;
  }

  Eigen::Matrix<double, dim + 1, 1> barycentric(const Vec<dim>& x) const {
    Vec<dim> ref = jacobian.fullPivLu().solve(x - p0);
    return reference_barycentric(ref);
  }
};

/// Uniform triangulation of (0,1)^2: n x n squares, each split along the
/// diagonal from the lower-left to the upper-right corner.
SimplicialMesh<2> build_uniform_triangle_mesh(int n);

/// Tetrahedralization of (0,1)^3 with 2^(level-1) cubes per side, each cube
/// cut into six tetrahedra sharing the cube's main diagonal (Kuhn split).
SimplicialMesh<3> build_uniform_tet_mesh(int level);

/// Builds connectivity and geometric quantities from raw vertices and cells.
/// Cells are reoriented to positive signed volume.
template <int dim>
SimplicialMesh<dim> build_from_cells(std::vector<Vec<dim>> vertices,
                                     std::vector<std::array<int, dim + 1>> cells);

template <int dim>
double mesh_size(const SimplicialMesh<dim>& mesh);

/// Plain-text dump for debugging: one vertex per line, then one cell per line.
template <int dim>
void write_mesh_text(const SimplicialMesh<dim>& mesh, std::ostream& out);

}  // namespace wg
