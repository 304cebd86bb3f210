#include <plexmesh/plex.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <queue>

using namespace plexmesh;

namespace
{

struct Adjacency
{
  std::vector<std::int32_t> offsets;
  std::vector<PointId> points;

  std::span<const PointId> links(PointId p) const
  {
    return {points.data() + offsets[p],
            static_cast<std::size_t>(offsets[p + 1] - offsets[p])};
  }
};

Adjacency compress(const std::vector<std::vector<PointId>>& lists)
{
  Adjacency adj;
  adj.offsets.resize(lists.size() + 1, 0);
  for (std::size_t p = 0; p < lists.size(); ++p)
    adj.offsets[p + 1] = adj.offsets[p] + static_cast<std::int32_t>(lists[p].size());
  adj.points.reserve(adj.offsets.back());
  for (const auto& l : lists)
    adj.points.insert(adj.points.end(), l.begin(), l.end());
  return adj;
}

/// Supports in ascending order, derived from the cones.
Adjacency transpose(const std::vector<std::vector<PointId>>& cones)
{
  const auto n = static_cast<PointId>(cones.size());
  Adjacency adj;
  adj.offsets.assign(n + 1, 0);
  for (const auto& cone : cones)
    for (PointId q : cone)
      ++adj.offsets[q + 1];
  std::partial_sum(adj.offsets.begin(), adj.offsets.end(), adj.offsets.begin());
  adj.points.resize(adj.offsets.back());
  std::vector<std::int32_t> pos(adj.offsets.begin(), adj.offsets.end() - 1);
  // Visiting p in ascending order leaves every support list sorted
  for (PointId p = 0; p < n; ++p)
    for (PointId q : cones[p])
      adj.points[pos[q]++] = p;
  return adj;
}

void validate_cones(const std::vector<std::vector<PointId>>& cones)
{
  const auto n = static_cast<PointId>(cones.size());
  for (PointId p = 0; p < n; ++p)
  {
    const auto& cone = cones[p];
    for (PointId q : cone)
    {
      if (q < 0 || q >= n)
        throw ValidationError("cone of point " + std::to_string(p)
                              + " references point " + std::to_string(q)
                              + " outside chart of size " + std::to_string(n));
      if (q == p)
        throw ValidationError("cycle detected: point " + std::to_string(p)
                              + " covers itself");
    }
    std::vector<PointId> sorted(cone);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError("cone of point " + std::to_string(p)
                            + " contains a repeated point");
  }
}

/// Longest-path levels by Kahn's algorithm. `down` are the edges followed to
/// reach level 0 points, `up` the reverse relation.
std::vector<std::int32_t> levels(const Adjacency& down, const Adjacency& up)
{
  const auto n = static_cast<PointId>(down.offsets.size()) - 1;
  std::vector<std::int32_t> level(n, 0);
  std::vector<std::int32_t> remaining(n);
  std::queue<PointId> ready;
  for (PointId p = 0; p < n; ++p)
  {
    remaining[p] = static_cast<std::int32_t>(down.links(p).size());
    if (remaining[p] == 0)
      ready.push(p);
  }

  PointId processed = 0;
  while (!ready.empty())
  {
    const PointId q = ready.front();
    ready.pop();
    ++processed;
    for (PointId p : up.links(q))
    {
      level[p] = std::max(level[p], level[q] + 1);
      if (--remaining[p] == 0)
        ready.push(p);
    }
  }
  if (processed != n)
    throw ValidationError("cycle detected in cone relation");
  return level;
}

std::vector<std::vector<PointId>> group(const std::vector<std::int32_t>& level)
{
  const std::int32_t max_level
      = level.empty() ? -1 : *std::max_element(level.begin(), level.end());
  std::vector<std::vector<PointId>> strata(max_level + 1);
  for (PointId p = 0; p < static_cast<PointId>(level.size()); ++p)
    strata[level[p]].push_back(p);
  return strata;
}

/// Breadth-first traversal with each level sorted ascending.
template <typename Next>
std::vector<PointId> traverse(PointId p, std::int32_t n, Next&& next)
{
  std::vector<PointId> result{p};
  std::vector<bool> seen(n, false);
  seen[p] = true;
  std::vector<PointId> frontier{p};
  while (!frontier.empty())
  {
    std::vector<PointId> level;
    for (PointId q : frontier)
      for (PointId r : next(q))
        if (!seen[r])
        {
          seen[r] = true;
          level.push_back(r);
        }
    std::sort(level.begin(), level.end());
    result.insert(result.end(), level.begin(), level.end());
    frontier = std::move(level);
  }
  return result;
}

} // namespace

//-----------------------------------------------------------------------------
Strata plexmesh::stratify(const std::vector<std::vector<PointId>>& cones)
{
  validate_cones(cones);
  const Adjacency down = compress(cones);
  const Adjacency up = transpose(cones);

  Strata s;
  s.depth = levels(down, up);
  s.height = levels(up, down);
  s.depth_strata = group(s.depth);
  s.height_strata = group(s.height);
  return s;
}
//-----------------------------------------------------------------------------
Strata plexmesh::stratify(const Plex& plex)
{
  return stratify(plex.cones());
}
//-----------------------------------------------------------------------------
Plex::Plex(const std::vector<std::vector<PointId>>& cones)
{
  Strata s = stratify(cones);
  Adjacency down = compress(cones);
  Adjacency up = transpose(cones);
  _cone_offsets = std::move(down.offsets);
  _cone_points = std::move(down.points);
  _support_offsets = std::move(up.offsets);
  _support_points = std::move(up.points);
  _depth = std::move(s.depth);
  _height = std::move(s.height);
  _dim = _depth.empty() ? -1 : *std::max_element(_depth.begin(), _depth.end());
}
//-----------------------------------------------------------------------------
void Plex::check_point(PointId p) const
{
  if (p < 0 || p >= chart_size())
    throw std::out_of_range("point " + std::to_string(p)
                            + " outside chart of size "
                            + std::to_string(chart_size()));
}
//-----------------------------------------------------------------------------
std::span<const PointId> Plex::cone(PointId p) const
{
  check_point(p);
  return {_cone_points.data() + _cone_offsets[p],
          static_cast<std::size_t>(_cone_offsets[p + 1] - _cone_offsets[p])};
}
//-----------------------------------------------------------------------------
std::span<const PointId> Plex::support(PointId p) const
{
  check_point(p);
  return {_support_points.data() + _support_offsets[p],
          static_cast<std::size_t>(_support_offsets[p + 1]
                                   - _support_offsets[p])};
}
//-----------------------------------------------------------------------------
std::int32_t Plex::depth(PointId p) const
{
  check_point(p);
  return _depth[p];
}
//-----------------------------------------------------------------------------
std::int32_t Plex::height(PointId p) const
{
  check_point(p);
  return _height[p];
}
//-----------------------------------------------------------------------------
std::vector<PointId> Plex::depth_stratum(std::int32_t d) const
{
  std::vector<PointId> points;
  for (PointId p = 0; p < chart_size(); ++p)
    if (_depth[p] == d)
      points.push_back(p);
  return points;
}
//-----------------------------------------------------------------------------
std::vector<PointId> Plex::height_stratum(std::int32_t h) const
{
  std::vector<PointId> points;
  for (PointId p = 0; p < chart_size(); ++p)
    if (_height[p] == h)
      points.push_back(p);
  return points;
}
//-----------------------------------------------------------------------------
std::vector<PointId> Plex::closure(PointId p) const
{
  check_point(p);
  return traverse(p, chart_size(), [this](PointId q) { return cone(q); });
}
//-----------------------------------------------------------------------------
std::vector<PointId> Plex::star(PointId p) const
{
  check_point(p);
  return traverse(p, chart_size(), [this](PointId q) { return support(q); });
}
//-----------------------------------------------------------------------------
bool Plex::is_interpolated() const
{
  for (PointId p = 0; p < chart_size(); ++p)
  {
    const std::int32_t k = _depth[p];
    if (k == 0)
      continue;
    const auto c = cone(p);
    if (static_cast<std::int32_t>(c.size()) != k + 1)
      return false;
    for (PointId q : c)
      if (_depth[q] != k - 1)
        return false;
  }
  return true;
}
//-----------------------------------------------------------------------------
std::vector<std::vector<PointId>> Plex::cones() const
{
  std::vector<std::vector<PointId>> result(chart_size());
  for (PointId p = 0; p < chart_size(); ++p)
  {
    const auto c = cone(p);
    result[p].assign(c.begin(), c.end());
  }
  return result;
}
//-----------------------------------------------------------------------------
std::vector<PointId> plexmesh::closure_vertices(const Plex& plex, PointId p)
{
  std::vector<PointId> vertices;
  for (PointId q : plex.closure(p))
    if (plex.depth(q) == 0)
      vertices.push_back(q);
  std::sort(vertices.begin(), vertices.end());
  return vertices;
}
//-----------------------------------------------------------------------------
Plex plexmesh::build_from_cells(
    const std::vector<std::vector<std::int32_t>>& cells,
    std::int32_t num_vertices, int dim)
{
  if (dim < 1 || dim > 3)
    throw ValidationError("mesh dimension must be 1, 2 or 3, got "
                          + std::to_string(dim));
  if (cells.empty())
    throw ValidationError("cell list is empty");
  if (num_vertices <= 0)
    throw ValidationError("vertex count must be positive");

  const std::size_t arity = cells.front().size();
  for (std::size_t c = 0; c < cells.size(); ++c)
  {
    if (cells[c].size() != arity)
      throw ValidationError("mixed cell arities: cell 0 has "
                            + std::to_string(arity) + " vertices, cell "
                            + std::to_string(c) + " has "
                            + std::to_string(cells[c].size()));
    for (std::int32_t v : cells[c])
      if (v < 0 || v >= num_vertices)
        throw ValidationError("cell " + std::to_string(c)
                              + " references vertex " + std::to_string(v)
                              + " outside [0, " + std::to_string(num_vertices)
                              + ")");
    std::vector<std::int32_t> sorted(cells[c]);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError("cell " + std::to_string(c)
                            + " repeats a vertex");
  }
  if (arity != static_cast<std::size_t>(dim) + 1)
    throw ValidationError("cells with " + std::to_string(arity)
                          + " vertices are not simplices of dimension "
                          + std::to_string(dim));

  const auto ncells = static_cast<PointId>(cells.size());
  const PointId vertex_start = ncells;
  auto vertex_point = [&](std::int32_t v) { return vertex_start + v; };

  using Tuple = std::vector<std::int32_t>;
  constexpr std::array<std::array<int, 3>, 4> tet_facets{
      {{0, 1, 2}, {0, 2, 3}, {0, 1, 3}, {1, 2, 3}}};
  constexpr std::array<std::array<int, 2>, 3> tri_edges{{{1, 2}, {0, 2}, {0, 1}}};

  // Intermediate entities per level, keyed by sorted vertex tuple. Index 0
  // holds the facets of a tetrahedral mesh, index 1 the edges.
  struct Level
  {
    std::map<Tuple, std::int32_t> index;
    std::vector<Tuple> tuples; // in creation order, as first seen
  };
  auto intern = [](Level& level, const Tuple& tuple)
  {
    Tuple key(tuple);
    std::sort(key.begin(), key.end());
    auto [it, inserted]
        = level.index.emplace(key, static_cast<std::int32_t>(level.tuples.size()));
    if (inserted)
      level.tuples.push_back(key);
    return it->second;
  };

  std::vector<std::vector<std::int32_t>> cell_cone_local(ncells);
  Level facets, edges;

  if (dim == 3)
  {
    for (PointId c = 0; c < ncells; ++c)
      for (const auto& f : tet_facets)
        cell_cone_local[c].push_back(intern(
            facets, {cells[c][f[0]], cells[c][f[1]], cells[c][f[2]]}));
  }

  std::vector<std::vector<std::int32_t>> facet_cone_local;
  if (dim == 3)
  {
    facet_cone_local.resize(facets.tuples.size());
    for (std::size_t f = 0; f < facets.tuples.size(); ++f)
    {
      const Tuple t = facets.tuples[f];
      for (const auto& e : tri_edges)
        facet_cone_local[f].push_back(intern(edges, {t[e[0]], t[e[1]]}));
    }
  }
  else if (dim == 2)
  {
    for (PointId c = 0; c < ncells; ++c)
      for (const auto& e : tri_edges)
        cell_cone_local[c].push_back(
            intern(edges, {cells[c][e[0]], cells[c][e[1]]}));
  }

  const auto nfacets = static_cast<PointId>(facets.tuples.size());
  const auto nedges = static_cast<PointId>(edges.tuples.size());
  const PointId facet_start = vertex_start + num_vertices;
  const PointId edge_start = facet_start + nfacets;
  const PointId chart = edge_start + nedges;

  std::vector<std::vector<PointId>> cones(chart);
  for (PointId c = 0; c < ncells; ++c)
  {
    if (dim == 1)
    {
      for (std::int32_t v : cells[c])
        cones[c].push_back(vertex_point(v));
    }
    else
    {
      const PointId start = dim == 3 ? facet_start : edge_start;
      for (std::int32_t local : cell_cone_local[c])
        cones[c].push_back(start + local);
    }
  }
  for (PointId f = 0; f < nfacets; ++f)
    for (std::int32_t local : facet_cone_local[f])
      cones[facet_start + f].push_back(edge_start + local);
  for (PointId e = 0; e < nedges; ++e)
    for (std::int32_t v : edges.tuples[e])
      cones[edge_start + e].push_back(vertex_point(v));

  return Plex(cones);
}
