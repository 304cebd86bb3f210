#pragma once

#include <plexmesh/label.hpp>
#include <plexmesh/mesh_io.hpp>
#include <plexmesh/permutation.hpp>
#include <plexmesh/plex.hpp>

#include <vector>

namespace plexmesh
{

/// Vertex graph of a plex: vertices (depth-0 points, indexed by their
/// position in ascending point order) are adjacent iff they share a depth-1
/// point. Neighbor lists are ascending.
std::vector<std::vector<std::int32_t>> vertex_adjacency(const Plex& plex);

/// Reverse Cuthill-McKee ordering of a vertex graph, returned as the list
/// of old vertex indices in new order. Each connected component is ordered
/// independently, components taken by their lowest vertex index.
std::vector<std::int32_t>
reverse_cuthill_mckee(const std::vector<std::vector<std::int32_t>>& adjacency);

/// RCM permutation of the whole chart.
///
/// Vertices are reassigned among the vertex point ids in RCM order. Points
/// of every other depth are reassigned among the ids of their own stratum,
/// sorted by the smallest new vertex position in their closure (ties by old
/// id). Strata therefore keep the id ranges they had.
Permutation rcm_ordering(const Plex& plex);

/// Relabel points: the cone of perm(p) is perm applied to cone(p), in order.
Plex permute_plex(const Plex& plex, const Permutation& perm);

Label permute_label(const Label& label, const Permutation& perm);

/// Relabel topology, coordinates and labels together.
MeshBundle apply_permutation(const MeshBundle& bundle, const Permutation& perm);

} // namespace plexmesh
