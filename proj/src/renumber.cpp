#include <plexmesh/renumber.hpp>

#include <algorithm>
#include <numeric>
#include <string>

using namespace plexmesh;

namespace
{

using Graph = std::vector<std::vector<std::int32_t>>;

/// Breadth-first levels from `start`, restricted to its component.
std::vector<std::vector<std::int32_t>> bfs_levels(const Graph& graph,
                                                  std::int32_t start,
                                                  std::vector<std::int32_t>& mark,
                                                  std::int32_t stamp)
{
  std::vector<std::vector<std::int32_t>> levels{{start}};
  mark[start] = stamp;
  while (true)
  {
    std::vector<std::int32_t> next;
    for (std::int32_t v : levels.back())
      for (std::int32_t w : graph[v])
        if (mark[w] != stamp)
        {
          mark[w] = stamp;
          next.push_back(w);
        }
    if (next.empty())
      break;
    levels.push_back(std::move(next));
  }
  return levels;
}

/// Double-BFS heuristic: move to the lowest-index vertex of the last level
/// while the eccentricity keeps growing.
std::int32_t pseudo_peripheral(const Graph& graph, std::int32_t start,
                               std::vector<std::int32_t>& mark,
                               std::int32_t& stamp)
{
  auto levels = bfs_levels(graph, start, mark, ++stamp);
  while (true)
  {
    const auto& last = levels.back();
    const std::int32_t candidate = *std::min_element(last.begin(), last.end());
    auto candidate_levels = bfs_levels(graph, candidate, mark, ++stamp);
    if (candidate_levels.size() <= levels.size())
      return start;
    start = candidate;
    levels = std::move(candidate_levels);
  }
}

} // namespace

//-----------------------------------------------------------------------------
Graph plexmesh::vertex_adjacency(const Plex& plex)
{
  const std::vector<PointId> vertices = plex.depth_stratum(0);
  std::vector<std::int32_t> index(plex.chart_size(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    index[vertices[i]] = static_cast<std::int32_t>(i);

  Graph graph(vertices.size());
  for (PointId e : plex.depth_stratum(1))
  {
    const auto cone = plex.cone(e);
    for (std::size_t i = 0; i < cone.size(); ++i)
      for (std::size_t j = i + 1; j < cone.size(); ++j)
      {
        const std::int32_t a = index[cone[i]], b = index[cone[j]];
        if (a < 0 || b < 0)
          continue;
        graph[a].push_back(b);
        graph[b].push_back(a);
      }
  }
  for (auto& adj : graph)
  {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return graph;
}
//-----------------------------------------------------------------------------
std::vector<std::int32_t> plexmesh::reverse_cuthill_mckee(const Graph& graph)
{
  const auto n = static_cast<std::int32_t>(graph.size());
  std::vector<std::int32_t> order;
  order.reserve(n);
  std::vector<bool> placed(n, false);
  std::vector<std::int32_t> mark(n, 0);
  std::int32_t stamp = 0;

  auto by_degree = [&](std::int32_t a, std::int32_t b)
  {
    if (graph[a].size() != graph[b].size())
      return graph[a].size() < graph[b].size();
    return a < b;
  };

  for (std::int32_t seed = 0; seed < n; ++seed)
  {
    if (placed[seed])
      continue;
    const std::int32_t start = pseudo_peripheral(graph, seed, mark, stamp);
    const auto component_begin = order.size();
    order.push_back(start);
    placed[start] = true;
    for (std::size_t head = component_begin; head < order.size(); ++head)
    {
      std::vector<std::int32_t> next;
      for (std::int32_t w : graph[order[head]])
        if (!placed[w])
        {
          placed[w] = true;
          next.push_back(w);
        }
      std::sort(next.begin(), next.end(), by_degree);
      order.insert(order.end(), next.begin(), next.end());
    }
    std::reverse(order.begin() + component_begin, order.end());
  }
  return order;
}
//-----------------------------------------------------------------------------
Permutation plexmesh::rcm_ordering(const Plex& plex)
{
  const std::vector<PointId> vertices = plex.depth_stratum(0);
  const std::vector<std::int32_t> order
      = reverse_cuthill_mckee(vertex_adjacency(plex));

  std::vector<PointId> forward(plex.chart_size(), -1);
  // New position of each vertex, by point id
  std::vector<std::int32_t> position(plex.chart_size(), -1);
  for (std::size_t k = 0; k < order.size(); ++k)
  {
    const PointId old_point = vertices[order[k]];
    forward[old_point] = vertices[k];
    position[old_point] = static_cast<std::int32_t>(k);
  }

  for (std::int32_t d = 1; d <= plex.dimension(); ++d)
  {
    const std::vector<PointId> slots = plex.depth_stratum(d);
    std::vector<std::pair<std::int32_t, PointId>> keyed;
    keyed.reserve(slots.size());
    for (PointId p : slots)
    {
      std::int32_t key = std::numeric_limits<std::int32_t>::max();
      for (PointId q : plex.closure(p))
        if (position[q] >= 0)
          key = std::min(key, position[q]);
      keyed.emplace_back(key, p);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t k = 0; k < keyed.size(); ++k)
      forward[keyed[k].second] = slots[k];
  }
  return Permutation::from_forward(std::move(forward));
}
//-----------------------------------------------------------------------------
Plex plexmesh::permute_plex(const Plex& plex, const Permutation& perm)
{
  if (perm.size() != plex.chart_size())
    throw ValidationError("permutation size " + std::to_string(perm.size())
                          + " does not match chart size "
                          + std::to_string(plex.chart_size()));
  std::vector<std::vector<PointId>> cones(plex.chart_size());
  for (PointId p = 0; p < plex.chart_size(); ++p)
  {
    auto& cone = cones[perm(p)];
    for (PointId q : plex.cone(p))
      cone.push_back(perm(q));
  }
  return Plex(cones);
}
//-----------------------------------------------------------------------------
Label plexmesh::permute_label(const Label& label, const Permutation& perm)
{
  Label out(label.name());
  for (const auto& [value, points] : label.data())
    for (PointId p : points)
      out.add(value, perm(p));
  return out;
}
//-----------------------------------------------------------------------------
MeshBundle plexmesh::apply_permutation(const MeshBundle& bundle,
                                       const Permutation& perm)
{
  MeshBundle out;
  out.dim = bundle.dim;
  out.plex = permute_plex(bundle.plex, perm);
  out.coordinates = permute_field(bundle.coordinates, perm);
  out.regions = permute_label(bundle.regions, perm);
  out.boundary = permute_label(bundle.boundary, perm);
  return out;
}
