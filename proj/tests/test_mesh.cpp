#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wg/mesh.hpp"

#include <cmath>
#include <set>
#include <sstream>

using namespace wg;

namespace {

// Independent facet count: enumerate unique sorted vertex tuples from cells.
template <int dim>
int count_unique_facets(const SimplicialMesh<dim>& mesh) {
  std::set<std::array<int, dim>> keys;
  for (const auto& cell : mesh.cells) {
    for (int i = 0; i <= dim; ++i) {
      std::array<int, dim> key;
      int k = 0;
      for (int j = 0; j <= dim; ++j)
        if (j != i) key[k++] = cell[j];
      std::sort(key.begin(), key.end());
      keys.insert(key);
    }
  }
  return static_cast<int>(keys.size());
}

template <int dim>
void check_invariants(const SimplicialMesh<dim>& mesh) {
  // closed surface identity and outwardness per cell
  for (int c = 0; c < mesh.n_cells(); ++c) {
    Vec<dim> closed = Vec<dim>::Zero();
    for (int i = 0; i <= dim; ++i) {
      const int f = mesh.cell_facets[c][i];
      closed += mesh.facet_measure[f] * mesh.outward_normals[c][i];
      for (int v : mesh.facets[f]) {
        CHECK((mesh.vertices[mesh.cells[c][i]] - mesh.vertices[v]).dot(mesh.outward_normals[c][i]) <
              0.0);
      }
      // facet i carries exactly the cell vertices other than local vertex i
      std::set<int> expect(mesh.cells[c].begin(), mesh.cells[c].end());
      expect.erase(mesh.cells[c][i]);
      CHECK(std::set<int>(mesh.facets[f].begin(), mesh.facets[f].end()) == expect);
    }
    CHECK(closed.norm() <= 1e-12);
    CHECK(mesh.cell_volume[c] > 0.0);
  }
  // sharing counts are exactly {1,2}, boundary iff 1
  std::vector<int> use(mesh.n_facets(), 0);
  for (int c = 0; c < mesh.n_cells(); ++c)
    for (int f : mesh.cell_facets[c]) ++use[f];
  for (int f = 0; f < mesh.n_facets(); ++f)
    CHECK(use[f] == (mesh.facet_boundary[f] ? 1 : 2));
  // unit domain volume (compensated sum oracle)
  long double vol = 0.0;
  for (double v : mesh.cell_volume) vol += v;
  CHECK(std::abs(static_cast<double>(vol) - 1.0) <= 1e-12);
}

}  // namespace

TEST_CASE("uniform triangle mesh counts") {
  const auto m1 = build_uniform_triangle_mesh(1);
  CHECK(m1.n_cells() == 2);
  CHECK(m1.n_vertices() == 4);
  CHECK(m1.n_facets() == 5);
  int boundary = 0;
  for (char b : m1.facet_boundary) boundary += b;
  CHECK(boundary == 4);

  const auto m8 = build_uniform_triangle_mesh(8);
  CHECK(m8.n_cells() == 128);
  CHECK(m8.n_vertices() == 81);
  CHECK(m8.n_facets() == 3 * 64 + 2 * 8);
  CHECK(m8.n_facets() == count_unique_facets(m8));
}

TEST_CASE("uniform triangle mesh invariants") {
  check_invariants(build_uniform_triangle_mesh(1));
  check_invariants(build_uniform_triangle_mesh(2));
  check_invariants(build_uniform_triangle_mesh(8));
  check_invariants(build_uniform_triangle_mesh(16));
}

TEST_CASE("tet mesh counts and volumes") {
  const auto m1 = build_uniform_tet_mesh(1);
  CHECK(m1.n_cells() == 6);
  CHECK(m1.n_vertices() == 8);
  for (double v : m1.cell_volume) CHECK(v == doctest::Approx(1.0 / 6.0).epsilon(1e-13));

  const auto m3 = build_uniform_tet_mesh(3);
  CHECK(m3.n_cells() == 384);
  long double vol = 0.0;
  for (double v : m3.cell_volume) vol += v;
  CHECK(std::abs(static_cast<double>(vol) - 1.0) <= 1e-12);

  const auto m2 = build_uniform_tet_mesh(2);
  int boundary = 0;
  for (char b : m2.facet_boundary) boundary += b;
  CHECK(boundary == 48);
}

TEST_CASE("tet mesh invariants") {
  check_invariants(build_uniform_tet_mesh(1));
  check_invariants(build_uniform_tet_mesh(2));
  check_invariants(build_uniform_tet_mesh(3));
}

TEST_CASE("mesh size") {
  const auto m4 = build_uniform_triangle_mesh(4);
  CHECK(mesh_size(m4) == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-13));

  const auto t1 = build_uniform_tet_mesh(1);
  CHECK(mesh_size(t1) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));

  // edge-length scan oracle and h >= h_T
  double scan = 0.0;
  for (int c = 0; c < m4.n_cells(); ++c) {
    for (int a = 0; a <= 2; ++a)
      for (int b = a + 1; b <= 2; ++b)
        scan = std::max(scan, (m4.vertices[m4.cells[c][a]] - m4.vertices[m4.cells[c][b]]).norm());
    CHECK(mesh_size(m4) >= m4.cell_diameter[c]);
  }
  CHECK(mesh_size(m4) == doctest::Approx(scan).epsilon(1e-15));
}

TEST_CASE("refinement halves mesh size") {
  for (int n : {2, 4, 8}) {
    const double h1 = mesh_size(build_uniform_triangle_mesh(n));
    const double h2 = mesh_size(build_uniform_triangle_mesh(2 * n));
    CHECK(std::abs(h2 - h1 / 2.0) / h1 <= 1e-12);
  }
  for (int level : {1, 2, 3}) {
    const double h1 = mesh_size(build_uniform_tet_mesh(level));
    const double h2 = mesh_size(build_uniform_tet_mesh(level + 1));
    CHECK(std::abs(h2 - h1 / 2.0) / h1 <= 1e-12);
  }
}

TEST_CASE("rejects degenerate inputs") {
  CHECK_THROWS_AS(build_uniform_triangle_mesh(0), std::invalid_argument);
  CHECK_THROWS_AS(build_uniform_tet_mesh(0), std::invalid_argument);
}

TEST_CASE("text dump") {
  std::ostringstream os;
  write_mesh_text(build_uniform_triangle_mesh(1), os);
  int lines = 0;
  for (char ch : os.str()) lines += ch == '\n';
  CHECK(lines == 4 + 2);  // vertices then cells
}
