#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace plexmesh
{

/// Index of a topological point in a plex chart. Cells, facets, edges and
/// vertices share one numbering.
using PointId = std::int32_t;

/// Raised when an input violates a documented precondition (bad ids, wrong
/// arity, cyclic cones, non-bijective permutations, ...).
class ValidationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Per-point height/depth values and the strata they induce.
struct Strata
{
  std::vector<std::int32_t> depth;
  std::vector<std::int32_t> height;
  std::vector<std::vector<PointId>> depth_strata;  // depth_strata[k]: ascending ids
  std::vector<std::vector<PointId>> height_strata; // height_strata[k]: ascending ids
};

/// Layered DAG over mesh points. Each point stores its cone (the points it
/// covers, one dimension down) and its support (the points covering it).
///
/// A Plex is immutable once constructed. The constructor derives supports
/// and strata from the cones and rejects cyclic input.
class Plex
{
public:
  Plex() = default;

  /// Construct from per-point cones. Cone order is preserved; supports are
  /// sorted by ascending point id.
  explicit Plex(const std::vector<std::vector<PointId>>& cones);

  std::int32_t chart_size() const
  {
    return static_cast<std::int32_t>(_depth.size());
  }

  std::span<const PointId> cone(PointId p) const;
  std::span<const PointId> support(PointId p) const;

  std::int32_t depth(PointId p) const;
  std::int32_t height(PointId p) const;

  /// Largest depth in the chart (the topological dimension for meshes
  /// built from cells). -1 for an empty chart.
  std::int32_t dimension() const { return _dim; }

  /// Points at the given depth/height, ascending. Empty when out of range.
  std::vector<PointId> depth_stratum(std::int32_t d) const;
  std::vector<PointId> height_stratum(std::int32_t h) const;

  /// Inclusive transitive closure over cones, breadth-first. Each level is
  /// emitted in ascending point id.
  std::vector<PointId> closure(PointId p) const;

  /// Inclusive transitive closure over supports, ordered like closure().
  std::vector<PointId> star(PointId p) const;

  /// True when every point at depth k > 0 has k+1 cone points, all at
  /// depth k-1, i.e. intermediate simplicial entities are explicit.
  bool is_interpolated() const;

  /// Copy of all cones, in point order.
  std::vector<std::vector<PointId>> cones() const;

  bool operator==(const Plex&) const = default;

private:
  void check_point(PointId p) const;

  std::vector<std::int32_t> _cone_offsets{0};
  std::vector<PointId> _cone_points;
  std::vector<std::int32_t> _support_offsets{0};
  std::vector<PointId> _support_points;
  std::vector<std::int32_t> _depth;
  std::vector<std::int32_t> _height;
  std::int32_t _dim = -1;
};

/// Build an interpolated simplicial plex from a cell-vertex list.
///
/// Points are numbered cells first, then vertices, then facets, then edges
/// (for dim 2 the facets are the edges; for dim 1 there are no intermediate
/// points). Intermediate entities are deduplicated by their sorted vertex
/// tuple and numbered in order of first appearance.
///
/// Local templates, for a cell (v0, v1, v2, v3):
///   tetrahedron facets: (v0,v1,v2) (v0,v2,v3) (v0,v1,v3) (v1,v2,v3)
///   triangle (a,b,c) edges: (b,c) (a,c) (a,b)
Plex build_from_cells(const std::vector<std::vector<std::int32_t>>& cells,
                      std::int32_t num_vertices, int dim);

/// Recompute heights, depths and strata. Throws ValidationError on a cycle.
Strata stratify(const std::vector<std::vector<PointId>>& cones);

/// Convenience wrapper returning the strata cached in a plex.
Strata stratify(const Plex& plex);

/// Vertices (depth-0 points) in the closure of p, ascending.
std::vector<PointId> closure_vertices(const Plex& plex, PointId p);

} // namespace plexmesh
