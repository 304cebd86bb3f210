#include <plexmesh/partition.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

using namespace plexmesh;

namespace
{

void bisect(std::vector<std::int32_t> cells, std::int32_t first_part,
            std::int32_t nparts,
            std::span<const std::array<double, 3>> centroids,
            std::vector<std::int32_t>& rank_of_cell)
{
  if (nparts == 1)
  {
    for (std::int32_t c : cells)
      rank_of_cell[c] = first_part;
    return;
  }

  // Widest axis of the centroid bounding box; lowest axis wins ties
  int axis = 0;
  double widest = -1.0;
  for (int k = 0; k < 3; ++k)
  {
    auto [lo, hi] = std::minmax_element(
        cells.begin(), cells.end(), [&](std::int32_t a, std::int32_t b)
        { return centroids[a][k] < centroids[b][k]; });
    const double width = centroids[*hi][k] - centroids[*lo][k];
    if (width > widest)
    {
      widest = width;
      axis = k;
    }
  }

  std::sort(cells.begin(), cells.end(), [&](std::int32_t a, std::int32_t b)
            {
              if (centroids[a][axis] != centroids[b][axis])
                return centroids[a][axis] < centroids[b][axis];
              return a < b;
            });

  const std::int32_t left_parts = nparts / 2;
  const auto n = static_cast<std::int64_t>(cells.size());
  const auto left_size = static_cast<std::int32_t>(
      (n * left_parts + nparts - 1) / nparts);

  std::vector<std::int32_t> left(cells.begin(), cells.begin() + left_size);
  std::vector<std::int32_t> right(cells.begin() + left_size, cells.end());
  bisect(std::move(left), first_part, left_parts, centroids, rank_of_cell);
  bisect(std::move(right), first_part + left_parts, nparts - left_parts,
         centroids, rank_of_cell);
}

std::vector<std::int32_t> greedy_bfs(const DualGraph& graph, std::int32_t nparts)
{
  const std::int32_t n = graph.num_nodes();
  std::vector<std::int32_t> rank(n, -1);
  std::int32_t next_seed = 0;
  std::int32_t remaining = n;

  for (std::int32_t part = 0; part < nparts; ++part)
  {
    const std::int32_t parts_left = nparts - part;
    const std::int32_t target = (remaining + parts_left - 1) / parts_left;
    std::int32_t size = 0;
    std::queue<std::int32_t> queue;
    while (size < target)
    {
      if (queue.empty())
      {
        while (rank[next_seed] != -1)
          ++next_seed;
        rank[next_seed] = part;
        ++size;
        queue.push(next_seed);
        continue;
      }
      const std::int32_t c = queue.front();
      queue.pop();
      for (std::int32_t d : graph.neighbors(c))
      {
        if (size == target)
          break;
        if (rank[d] == -1)
        {
          rank[d] = part;
          ++size;
          queue.push(d);
        }
      }
    }
    remaining -= size;
  }
  return rank;
}

} // namespace

//-----------------------------------------------------------------------------
DualGraph::DualGraph(std::vector<std::int32_t> offsets,
                     std::vector<std::int32_t> neighbors)
    : _offsets(std::move(offsets)), _neighbors(std::move(neighbors))
{
  if (_offsets.empty() || _offsets.front() != 0
      || _offsets.back() != static_cast<std::int32_t>(_neighbors.size()))
    throw ValidationError("inconsistent dual graph offsets");
}
//-----------------------------------------------------------------------------
std::vector<std::int32_t> PartitionMap::part_sizes() const
{
  std::vector<std::int32_t> sizes(nparts, 0);
  for (std::int32_t r : rank_of_cell)
    ++sizes.at(r);
  return sizes;
}
//-----------------------------------------------------------------------------
std::string plexmesh::to_string(PartitionMethod method)
{
  return method == PartitionMethod::greedy_bfs ? "greedy-bfs"
                                               : "coordinate-bisection";
}
//-----------------------------------------------------------------------------
std::optional<PartitionMethod>
plexmesh::parse_partition_method(const std::string& name)
{
  if (name == "greedy-bfs")
    return PartitionMethod::greedy_bfs;
  if (name == "coordinate-bisection")
    return PartitionMethod::coordinate_bisection;
  return std::nullopt;
}
//-----------------------------------------------------------------------------
DualGraph plexmesh::build_dual_graph(const Plex& plex)
{
  if (!plex.is_interpolated())
    throw ValidationError("dual graph requires an interpolated plex");

  const std::vector<PointId> cells = plex.height_stratum(0);
  std::vector<std::int32_t> node_of(plex.chart_size(), -1);
  for (std::size_t i = 0; i < cells.size(); ++i)
    node_of[cells[i]] = static_cast<std::int32_t>(i);

  std::vector<std::vector<std::int32_t>> adjacency(cells.size());
  for (PointId f : plex.height_stratum(1))
  {
    const auto sup = plex.support(f);
    for (std::size_t i = 0; i < sup.size(); ++i)
      for (std::size_t j = i + 1; j < sup.size(); ++j)
      {
        const std::int32_t a = node_of[sup[i]], b = node_of[sup[j]];
        if (a < 0 || b < 0)
          continue;
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
      }
  }

  std::vector<std::int32_t> offsets{0};
  std::vector<std::int32_t> neighbors;
  for (auto& adj : adjacency)
  {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    neighbors.insert(neighbors.end(), adj.begin(), adj.end());
    offsets.push_back(static_cast<std::int32_t>(neighbors.size()));
  }
  return DualGraph(std::move(offsets), std::move(neighbors));
}
//-----------------------------------------------------------------------------
PartitionMap plexmesh::partition_cells(
    const DualGraph& graph, std::int32_t nparts, PartitionMethod method,
    std::span<const std::array<double, 3>> centroids)
{
  const std::int32_t n = graph.num_nodes();
  if (nparts < 1)
    throw ValidationError("number of parts must be at least 1");
  if (nparts > n)
    throw ValidationError("cannot split " + std::to_string(n) + " cells into "
                          + std::to_string(nparts) + " parts");

  PartitionMap map;
  map.nparts = nparts;
  if (method == PartitionMethod::greedy_bfs)
    map.rank_of_cell = greedy_bfs(graph, nparts);
  else
  {
    if (centroids.size() != static_cast<std::size_t>(n))
      throw ValidationError("coordinate bisection needs one centroid per cell");
    map.rank_of_cell.assign(n, -1);
    std::vector<std::int32_t> cells(n);
    std::iota(cells.begin(), cells.end(), 0);
    bisect(std::move(cells), 0, nparts, centroids, map.rank_of_cell);
  }
  return map;
}
//-----------------------------------------------------------------------------
PartitionStats plexmesh::partition_stats(const DualGraph& graph,
                                         const PartitionMap& map)
{
  if (map.num_cells() != graph.num_nodes())
    throw ValidationError("partition covers " + std::to_string(map.num_cells())
                          + " cells but the graph has "
                          + std::to_string(graph.num_nodes()));
  for (std::int32_t r : map.rank_of_cell)
    if (r < 0 || r >= map.nparts)
      throw ValidationError("rank " + std::to_string(r) + " outside [0, "
                            + std::to_string(map.nparts) + ")");

  PartitionStats stats;
  for (std::int32_t c = 0; c < graph.num_nodes(); ++c)
    for (std::int32_t d : graph.neighbors(c))
      if (c < d && map.rank_of_cell[c] != map.rank_of_cell[d])
        ++stats.edge_cut;

  const auto sizes = map.part_sizes();
  const double mean = static_cast<double>(map.num_cells()) / map.nparts;
  const double largest = *std::max_element(sizes.begin(), sizes.end());
  stats.imbalance = map.num_cells() == 0 ? 1.0 : largest / mean;
  return stats;
}
