#pragma once

// Test meshes and independent oracles shared by the unit and acceptance
// suites.

#include <plexmesh/mesh_io.hpp>
#include <plexmesh/sparsity.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace fixtures
{

using plexmesh::PointId;
using plexmesh::RawMesh;

inline std::string corpus_path(const std::string& name)
{
  return std::string(PLEXMESH_TEST_DATA) + "/" + name;
}

inline RawMesh read_mesh_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  return plexmesh::read_gmsh(in);
}

inline RawMesh read_corpus(const std::string& name)
{
  return read_mesh_file(corpus_path(name));
}

inline const std::vector<std::string>& corpus_names()
{
  static const std::vector<std::string> names{
      "line.msh",      "triangle.msh",    "tet.msh",       "two_triangles.msh",
      "unit_square.msh", "grid4x4.msh", "grid32x32.msh", "cube.msh"};
  return names;
}

/// Reference simplex of dimension `dim`; vertex coordinates are the origin
/// and the unit axis points.
inline RawMesh single_simplex(int dim)
{
  RawMesh m;
  m.dim = dim;
  std::vector<std::int32_t> cell;
  for (int v = 0; v <= dim; ++v)
  {
    for (int k = 0; k < dim; ++k)
      m.coordinates.push_back(v > 0 && k == v - 1 ? 1.0 : 0.0);
    cell.push_back(v);
  }
  m.cells.push_back(cell);
  m.cell_region_ids.push_back(1);
  return m;
}

inline RawMesh two_triangles()
{
  RawMesh m;
  m.dim = 2;
  m.coordinates = {0, 0, 1, 0, 0, 1, 1, 1};
  m.cells = {{0, 1, 3}, {0, 3, 2}};
  m.cell_region_ids = {10, 10};
  return m;
}

/// n x n unit-square grid, two triangles per square, boundary markers
/// bottom=1, right=2, top=3, left=4.
inline RawMesh triangle_grid(int n, bool with_boundary = true)
{
  RawMesh m;
  m.dim = 2;
  auto v = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
    {
      m.coordinates.push_back(static_cast<double>(i) / n);
      m.coordinates.push_back(static_cast<double>(j) / n);
    }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
    {
      m.cells.push_back({v(i, j), v(i + 1, j), v(i + 1, j + 1)});
      m.cells.push_back({v(i, j), v(i + 1, j + 1), v(i, j + 1)});
      m.cell_region_ids.push_back(10);
      m.cell_region_ids.push_back(10);
    }
  if (with_boundary)
    for (int k = 0; k < n; ++k)
    {
      m.boundary_facets.push_back({{v(k, 0), v(k + 1, 0)}, 1});
      m.boundary_facets.push_back({{v(n, k), v(n, k + 1)}, 2});
      m.boundary_facets.push_back({{v(k + 1, n), v(k, n)}, 3});
      m.boundary_facets.push_back({{v(0, k + 1), v(0, k)}, 4});
    }
  return m;
}

/// Path of `n` segments along the x axis.
inline RawMesh segment_path(int n)
{
  RawMesh m;
  m.dim = 1;
  for (int i = 0; i <= n; ++i)
    m.coordinates.push_back(i);
  for (int i = 0; i < n; ++i)
  {
    m.cells.push_back({i, i + 1});
    m.cell_region_ids.push_back(0);
  }
  return m;
}

/// n^3 cubes, six tetrahedra each (Kuhn split), no boundary markers.
inline RawMesh cube_tets(int n)
{
  RawMesh m;
  m.dim = 3;
  auto v = [n](int i, int j, int k) { return (k * (n + 1) + j) * (n + 1) + i; };
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i)
        for (int x : {i, j, k})
          m.coordinates.push_back(static_cast<double>(x) / n);
  std::array<int, 3> axes{0, 1, 2};
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
      {
        std::array<int, 3> order = axes;
        do
        {
          std::array<int, 3> c{i, j, k};
          std::vector<std::int32_t> tet{v(c[0], c[1], c[2])};
          for (int a : order)
          {
            ++c[a];
            tet.push_back(v(c[0], c[1], c[2]));
          }
          m.cells.push_back(tet);
          m.cell_region_ids.push_back(20);
        } while (std::next_permutation(order.begin(), order.end()));
      }
  return m;
}

//-----------------------------------------------------------------------------
// Canonical form: a renumbering-independent description of a bundle keyed by
// vertex coordinates.

using Coord = std::vector<double>;

struct CanonicalMesh
{
  std::vector<Coord> vertices;
  std::vector<std::pair<std::vector<Coord>, std::int32_t>> cells;
  std::vector<std::pair<std::vector<Coord>, std::int32_t>> boundary;

  bool operator==(const CanonicalMesh&) const = default;
};

inline CanonicalMesh canonical_form(const RawMesh& m)
{
  auto coord = [&](std::int32_t v)
  {
    return Coord(m.coordinates.begin() + v * m.dim,
                 m.coordinates.begin() + (v + 1) * m.dim);
  };
  auto tuple = [&](const std::vector<std::int32_t>& vs)
  {
    std::vector<Coord> t;
    for (auto v : vs)
      t.push_back(coord(v));
    std::sort(t.begin(), t.end());
    return t;
  };
  CanonicalMesh c;
  for (std::int32_t v = 0; v < m.num_vertices(); ++v)
    c.vertices.push_back(coord(v));
  for (std::size_t i = 0; i < m.cells.size(); ++i)
    c.cells.emplace_back(tuple(m.cells[i]), m.cell_region_ids[i]);
  for (const auto& f : m.boundary_facets)
    c.boundary.emplace_back(tuple(f.vertices), f.marker);
  std::sort(c.vertices.begin(), c.vertices.end());
  std::sort(c.cells.begin(), c.cells.end());
  std::sort(c.boundary.begin(), c.boundary.end());
  return c;
}

/// Canonical form read straight off the plex (closure vertices of every
/// cell and marked facet), not through bundle_to_raw.
inline CanonicalMesh canonical_form(const plexmesh::MeshBundle& b)
{
  const auto& plex = b.plex;
  auto coord = [&](PointId v)
  {
    auto x = b.coordinates.at(v);
    return Coord(x.begin(), x.end());
  };
  auto tuple = [&](PointId p)
  {
    std::vector<Coord> t;
    for (PointId q : plex.closure(p))
      if (plex.cone(q).empty())
        t.push_back(coord(q));
    std::sort(t.begin(), t.end());
    return t;
  };
  CanonicalMesh c;
  for (PointId p = 0; p < plex.chart_size(); ++p)
  {
    if (plex.cone(p).empty())
      c.vertices.push_back(coord(p));
    if (plex.support(p).empty())
      c.cells.emplace_back(tuple(p), b.regions.value_of(p, 0));
  }
  for (const auto& [value, points] : b.boundary.data())
    for (PointId p : points)
      c.boundary.emplace_back(tuple(p), value);
  std::sort(c.vertices.begin(), c.vertices.end());
  std::sort(c.cells.begin(), c.cells.end());
  std::sort(c.boundary.begin(), c.boundary.end());
  return c;
}

//-----------------------------------------------------------------------------
// Brute-force oracles

/// Bandwidth from an explicit entry list: max |i - j| over stored entries.
inline std::int64_t brute_bandwidth(const plexmesh::CsrPattern& p)
{
  std::int64_t bw = 0;
  for (std::int32_t i = 0; i < p.num_rows(); ++i)
    for (std::int32_t j = 0; j < p.num_rows(); ++j)
      if (p.contains(i, j))
        bw = std::max<std::int64_t>(bw, i > j ? i - j : j - i);
  return bw;
}

/// Unordered vertex pairs (plus diagonal) sharing a cell of the raw mesh,
/// counted both ways: the P1 nnz.
inline std::int64_t brute_p1_nnz(const RawMesh& m)
{
  std::set<std::pair<std::int32_t, std::int32_t>> entries;
  for (const auto& cell : m.cells)
    for (auto a : cell)
      for (auto b : cell)
        entries.emplace(a, b);
  for (std::int32_t v = 0; v < m.num_vertices(); ++v)
    entries.emplace(v, v);
  return static_cast<std::int64_t>(entries.size());
}

/// Cells sharing dim vertices (i.e. a facet), found by pairwise comparison.
inline std::set<std::pair<std::int32_t, std::int32_t>>
brute_dual_edges(const RawMesh& m)
{
  std::set<std::pair<std::int32_t, std::int32_t>> edges;
  for (std::size_t a = 0; a < m.cells.size(); ++a)
    for (std::size_t b = a + 1; b < m.cells.size(); ++b)
    {
      int shared = 0;
      for (auto x : m.cells[a])
        shared += static_cast<int>(
            std::count(m.cells[b].begin(), m.cells[b].end(), x));
      if (shared == m.dim)
        edges.emplace(static_cast<std::int32_t>(a), static_cast<std::int32_t>(b));
    }
  return edges;
}

inline std::vector<PointId> random_permutation(std::int32_t n, std::uint32_t seed)
{
  std::vector<PointId> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::mt19937 rng(seed);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

} // namespace fixtures
