#pragma once

#include <plexmesh/plex.hpp>

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace plexmesh
{

/// Cell adjacency through shared facets, in CSR form. Node i is the i-th
/// cell in ascending point order.
class DualGraph
{
public:
  DualGraph() = default;
  DualGraph(std::vector<std::int32_t> offsets, std::vector<std::int32_t> neighbors);

  std::int32_t num_nodes() const
  {
    return static_cast<std::int32_t>(_offsets.size()) - 1;
  }

  /// Number of undirected edges.
  std::int64_t num_edges() const
  {
    return static_cast<std::int64_t>(_neighbors.size()) / 2;
  }

  /// Neighbors of node c, ascending.
  std::span<const std::int32_t> neighbors(std::int32_t c) const
  {
    return {_neighbors.data() + _offsets[c],
            static_cast<std::size_t>(_offsets[c + 1] - _offsets[c])};
  }

  bool operator==(const DualGraph&) const = default;

private:
  std::vector<std::int32_t> _offsets{0};
  std::vector<std::int32_t> _neighbors;
};

/// Owning rank of every cell.
struct PartitionMap
{
  std::vector<std::int32_t> rank_of_cell;
  std::int32_t nparts = 1;

  std::int32_t num_cells() const
  {
    return static_cast<std::int32_t>(rank_of_cell.size());
  }

  /// Cells per part.
  std::vector<std::int32_t> part_sizes() const;

  bool operator==(const PartitionMap&) const = default;
};

struct PartitionStats
{
  /// Dual edges whose endpoints lie on different parts.
  std::int64_t edge_cut = 0;
  /// Largest part size over mean part size.
  double imbalance = 1.0;
};

enum class PartitionMethod
{
  greedy_bfs,
  coordinate_bisection
};

std::string to_string(PartitionMethod method);

/// Parse "greedy-bfs" or "coordinate-bisection".
std::optional<PartitionMethod> parse_partition_method(const std::string& name);

/// Cells are adjacent iff they share a height-1 point. Throws
/// ValidationError for a non-interpolated plex.
DualGraph build_dual_graph(const Plex& plex);

/// Assign every cell to one of `nparts` ranks.
///
/// greedy-bfs grows one part at a time by breadth-first search from the
/// lowest unassigned cell until it reaches ceil(remaining cells / remaining
/// parts); if the search runs dry it reseeds from the lowest unassigned cell.
///
/// coordinate-bisection recursively splits along the widest centroid axis.
/// The left half receives floor(k/2) of the k parts and
/// ceil(n * floor(k/2) / k) of the n cells (ties by cell index); for two
/// parts that is the lower median.
PartitionMap partition_cells(const DualGraph& graph, std::int32_t nparts,
                             PartitionMethod method,
                             std::span<const std::array<double, 3>> centroids = {});

PartitionStats partition_stats(const DualGraph& graph, const PartitionMap& map);

} // namespace plexmesh
