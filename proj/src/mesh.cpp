#include "wg/mesh.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

namespace wg {

namespace {

template <int dim>
double signed_volume(const std::vector<Vec<dim>>& vertices, const std::array<int, dim + 1>& cell) {
  Mat<dim> edges;
  for (int j = 0; j < dim; ++j) edges.col(j) = vertices[cell[j + 1]] - vertices[cell[0]];
  double factorial = (dim == 2) ? 2.0 : 6.0;
  return edges.determinant() / factorial;
}

Vec<2> facet_normal(const Vec<2>& a, const Vec<2>& b) {
  Vec<2> t = b - a;
  return Vec<2>(t.y(), -t.x()).normalized();
}

Vec<3> facet_normal(const Vec<3>& a, const Vec<3>& b, const Vec<3>& c) {
  return Vec<3>((b - a).cross(c - a)).normalized();
}

}  // namespace

template <int dim>
SimplicialMesh<dim> build_from_cells(std::vector<Vec<dim>> vertices,
                                     std::vector<std::array<int, dim + 1>> cells) {
  SimplicialMesh<dim> mesh;
  mesh.vertices = std::move(vertices);
  mesh.cells = std::move(cells);

  const int n_cells = mesh.n_cells();
  for (auto& cell : mesh.cells) {
    if (signed_volume<dim>(mesh.vertices, cell) < 0.0) std::swap(cell[0], cell[1]);
    double vol = signed_volume<dim>(mesh.vertices, cell);
    if (!(vol > 0.0)) throw std::invalid_argument("degenerate cell in mesh construction");
  }

  // Facets keyed by sorted vertex ids, numbered in order of first encounter.
  std::map<std::array<int, dim>, int> facet_ids;
  std::vector<int> facet_use_count;
  mesh.cell_facets.resize(n_cells);
  for (int c = 0; c < n_cells; ++c) {
    for (int i = 0; i <= dim; ++i) {
      std::array<int, dim> key;
      int k = 0;
      for (int j = 0; j <= dim; ++j)
        if (j != i) key[k++] = mesh.cells[c][j];
      std::sort(key.begin(), key.end());
      auto [it, inserted] = facet_ids.try_emplace(key, static_cast<int>(mesh.facets.size()));
      if (inserted) {
        mesh.facets.push_back(key);
        facet_use_count.push_back(0);
      }
      mesh.cell_facets[c][i] = it->second;
      ++facet_use_count[it->second];
    }
  }

  const int n_facets = mesh.n_facets();
  mesh.facet_boundary.resize(n_facets);
  for (int f = 0; f < n_facets; ++f) {
    if (facet_use_count[f] < 1 || facet_use_count[f] > 2)
      throw std::invalid_argument("non-manifold facet in mesh construction");
    mesh.facet_boundary[f] = (facet_use_count[f] == 1);
  }

  mesh.facet_measure.resize(n_facets);
  mesh.facet_centroid.resize(n_facets);
  for (int f = 0; f < n_facets; ++f) {
    const auto& fv = mesh.facets[f];
    Vec<dim> centroid = Vec<dim>::Zero();
    for (int v : fv) centroid += mesh.vertices[v];
    mesh.facet_centroid[f] = centroid / dim;
    if constexpr (dim == 2) {
      mesh.facet_measure[f] = (mesh.vertices[fv[1]] - mesh.vertices[fv[0]]).norm();
    } else {
      mesh.facet_measure[f] = 0.5 * (mesh.vertices[fv[1]] - mesh.vertices[fv[0]])
                                        .cross(mesh.vertices[fv[2]] - mesh.vertices[fv[0]])
                                        .norm();
    }
    if (!(mesh.facet_measure[f] > 0.0))
      throw std::invalid_argument("degenerate facet in mesh construction");
  }

  mesh.cell_volume.resize(n_cells);
  mesh.cell_diameter.resize(n_cells);
  mesh.outward_normals.resize(n_cells);
  for (int c = 0; c < n_cells; ++c) {
    mesh.cell_volume[c] = signed_volume<dim>(mesh.vertices, mesh.cells[c]);
    double diam = 0.0;
    for (int a = 0; a <= dim; ++a)
      for (int b = a + 1; b <= dim; ++b)
        diam = std::max(diam, (mesh.vertices[mesh.cells[c][a]] - mesh.vertices[mesh.cells[c][b]]).norm());
    mesh.cell_diameter[c] = diam;

    for (int i = 0; i <= dim; ++i) {
      const auto& fv = mesh.facets[mesh.cell_facets[c][i]];
      Vec<dim> n;
      if constexpr (dim == 2) {
        n = facet_normal(mesh.vertices[fv[0]], mesh.vertices[fv[1]]);
      } else {
        n = facet_normal(mesh.vertices[fv[0]], mesh.vertices[fv[1]], mesh.vertices[fv[2]]);
      }
      const Vec<dim> opposite = mesh.vertices[mesh.cells[c][i]];
      if (n.dot(mesh.facet_centroid[mesh.cell_facets[c][i]] - opposite) < 0.0) n = -n;
      mesh.outward_normals[c][i] = n;
    }
  }
  return mesh;
}

SimplicialMesh<2> build_uniform_triangle_mesh(int n) {
  if (n < 1) throw std::invalid_argument("build_uniform_triangle_mesh: n must be >= 1");
  std::vector<Vec<2>> vertices;
  vertices.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      vertices.emplace_back(double(i) / n, double(j) / n);

  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::array<int, 3>> cells;
  cells.reserve(2 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int ll = vid(i, j), lr = vid(i + 1, j), ul = vid(i, j + 1), ur = vid(i + 1, j + 1);
      cells.push_back({ll, lr, ur});
      cells.push_back({ll, ur, ul});
    }
  }
  return build_from_cells<2>(std::move(vertices), std::move(cells));
}

SimplicialMesh<3> build_uniform_tet_mesh(int level) {
  if (level < 1) throw std::invalid_argument("build_uniform_tet_mesh: level must be >= 1");
  const int n = 1 << (level - 1);
  std::vector<Vec<3>> vertices;
  vertices.reserve((n + 1) * (n + 1) * (n + 1));
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i)
        vertices.emplace_back(double(i) / n, double(j) / n, double(k) / n);

  auto vid = [n](int i, int j, int k) { return (k * (n + 1) + j) * (n + 1) + i; };

  std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  std::vector<std::array<int, 4>> cells;
  cells.reserve(6 * n * n * n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        for (const auto& perm : perms) {
          std::array<int, 3> p = {i, j, k};
          std::array<int, 4> tet;
          tet[0] = vid(p[0], p[1], p[2]);
          for (int s = 0; s < 3; ++s) {
            ++p[perm[s]];
            tet[s + 1] = vid(p[0], p[1], p[2]);
          }
          cells.push_back(tet);
        }
      }
    }
  }
  return build_from_cells<3>(std::move(vertices), std::move(cells));
}

template <int dim>
double mesh_size(const SimplicialMesh<dim>& mesh) {
  double h = 0.0;
  for (double d : mesh.cell_diameter) h = std::max(h, d);
  return h;
}

template <int dim>
void write_mesh_text(const SimplicialMesh<dim>& mesh, std::ostream& out) {
  for (const auto& v : mesh.vertices) {
    for (int j = 0; j < dim; ++j) out << (j ? " " : "") << v[j];
    out << "\n";
  }
  for (const auto& c : mesh.cells) {
    for (int j = 0; j <= dim; ++j) out << (j ? " " : "") << c[j];
    out << "\n";
  }
}

template SimplicialMesh<2> build_from_cells<2>(std::vector<Vec<2>>, std::vector<std::array<int, 3>>);
template SimplicialMesh<3> build_from_cells<3>(std::vector<Vec<3>>, std::vector<std::array<int, 4>>);
template double mesh_size<2>(const SimplicialMesh<2>&);
template double mesh_size<3>(const SimplicialMesh<3>&);
template void write_mesh_text<2>(const SimplicialMesh<2>&, std::ostream&);
template void write_mesh_text<3>(const SimplicialMesh<3>&, std::ostream&);

}  // namespace wg
