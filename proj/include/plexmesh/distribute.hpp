#pragma once

#include <plexmesh/mesh_io.hpp>
#include <plexmesh/partition.hpp>
#include <plexmesh/permutation.hpp>
#include <plexmesh/section.hpp>

#include <span>
#include <vector>

namespace plexmesh
{

/// Points each rank stores after distribution with one layer of cell
/// overlap, and the owner of every global point.
struct PartitionClosure
{
  /// points[r]: global ids held by rank r, ascending.
  std::vector<std::vector<PointId>> points;
  /// owned_cells[r]: global cell ids assigned to rank r, ascending.
  std::vector<std::vector<PointId>> owned_cells;
  /// owner[p]: lowest rank whose owned-cell closure contains p.
  std::vector<std::int32_t> owner;
};

/// A ghost point: `local` on this rank mirrors `owner_point` on `owner_rank`.
struct SfLeaf
{
  PointId local = 0;
  std::int32_t owner_rank = 0;
  PointId owner_point = 0;

  bool operator==(const SfLeaf&) const = default;
  auto operator<=>(const SfLeaf&) const = default;
};

/// Star forest: leaves[r] lists the ghost points of rank r, ascending by
/// local point.
struct StarForest
{
  std::vector<std::vector<SfLeaf>> leaves;

  std::int32_t num_ranks() const
  {
    return static_cast<std::int32_t>(leaves.size());
  }
  std::size_t num_leaves() const;

  bool operator==(const StarForest&) const = default;
};

/// One simulated rank's share of the mesh.
struct RankLocalMesh
{
  std::int32_t rank = 0;
  MeshBundle bundle;
  /// Global point id of every local point.
  std::vector<PointId> local_to_global;
  /// Local ids of the cells this rank owns, ascending.
  std::vector<PointId> owned_cells;
  /// Local ids of points owned elsewhere, ascending.
  std::vector<PointId> ghosts;
  /// Extra fields migrated with the mesh (preprocessor path only).
  std::vector<Field> fields;
};

/// Bytes moved from the root to all ranks, 8 bytes per word.
struct MigrationReport
{
  /// Sum over received points of (cone size + 1 word of point metadata).
  std::int64_t bytes_topology = 0;
  /// Sum over received points of coordinate dofs.
  std::int64_t bytes_coordinates = 0;
  /// Sum over received points and supplied fields of field dofs.
  std::int64_t bytes_fields = 0;
  std::vector<std::int64_t> points_per_rank;

  std::int64_t total() const
  {
    return bytes_topology + bytes_coordinates + bytes_fields;
  }
};

struct Distribution
{
  std::vector<RankLocalMesh> ranks;
  StarForest sf;
  MigrationReport report;
};

/// Trailing-receives layout of one rank: owned dofs occupy [0, n_owned),
/// ghost dofs follow, grouped by owner rank then owner point.
struct Halo
{
  std::int64_t n_owned = 0;
  std::int32_t n_owned_points = 0;
  /// Ghost points in receive order, local ids after the permutation.
  std::vector<SfLeaf> receives;
};

/// Owned cells, overlap cells and their closures for every rank.
PartitionClosure close_partition(const Plex& plex, const PartitionMap& map);

/// Split a bundle across `nranks` simulated ranks. Each rank gets a local
/// plex numbered cells, vertices, then higher-to-lower intermediate strata,
/// each group in ascending global id. Fields, when supplied, must be laid
/// out on `bundle.plex` and are migrated alongside the mesh.
Distribution migrate(const MeshBundle& bundle, const PartitionMap& map,
                     std::int32_t nranks, std::span<const Field> fields = {});

/// Local permutation putting points that are not star-forest leaves first
/// (keeping their order) and ghosts after them, sorted by (owner rank,
/// owner point).
std::pair<Halo, Permutation> build_halo(const RankLocalMesh& local,
                                        const StarForest& sf,
                                        const Section& section);

/// Renumber rank `rank` in place and patch every star-forest reference to
/// its points, on that rank and on the ranks that ghost them.
void apply_local_permutation(Distribution& dist, std::int32_t rank,
                             const Permutation& perm);

/// Reassemble the global bundle from the owned points of every rank.
/// Throws ValidationError if a point is claimed by two ranks, by none, or
/// if a leaf does not mirror the point it names.
MeshBundle gather_to_root(std::span<const RankLocalMesh> locals,
                          const StarForest& sf);

/// Check the star-forest invariants against the local meshes: leaves point
/// to a different rank, to an existing owned point there, with a matching
/// global id, and every rank's ghost set equals its leaf set.
void validate_star_forest(std::span<const RankLocalMesh> locals,
                          const StarForest& sf);

} // namespace plexmesh
