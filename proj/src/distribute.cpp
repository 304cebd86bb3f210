#include <plexmesh/distribute.hpp>
#include <plexmesh/renumber.hpp>

#include <algorithm>
#include <future>
#include <string>

using namespace plexmesh;

namespace
{

constexpr std::int64_t word_bytes = 8;

/// Sort key grouping local points as cells, vertices, then intermediate
/// strata from highest to lowest depth.
std::int32_t point_group(const Plex& plex, PointId p)
{
  if (plex.height(p) == 0)
    return 0;
  if (plex.depth(p) == 0)
    return 1;
  return 2 + (plex.dimension() - 1 - plex.depth(p));
}

Field restrict_field(const Field& field, std::span<const PointId> local_to_global)
{
  std::vector<std::int32_t> dofs;
  dofs.reserve(local_to_global.size());
  for (PointId g : local_to_global)
    dofs.push_back(field.section.dof(g));
  Field out{field.name, Section(std::move(dofs)), {}};
  out.values.reserve(out.section.total_size());
  for (PointId g : local_to_global)
  {
    const auto v = field.at(g);
    out.values.insert(out.values.end(), v.begin(), v.end());
  }
  return out;
}

Label restrict_label(const Label& label, const std::vector<PointId>& global_to_local)
{
  Label out(label.name());
  for (const auto& [value, points] : label.data())
    for (PointId g : points)
      if (global_to_local[g] >= 0)
        out.add(value, global_to_local[g]);
  return out;
}

RankLocalMesh extract_rank(const MeshBundle& bundle, std::int32_t rank,
                           const PartitionClosure& closure,
                           const std::vector<PointId>& local_to_global,
                           const std::vector<PointId>& global_to_local,
                           std::span<const Field> fields)
{
  const Plex& plex = bundle.plex;
  RankLocalMesh local;
  local.rank = rank;
  local.local_to_global = local_to_global;

  const auto n = static_cast<PointId>(local_to_global.size());
  std::vector<std::vector<PointId>> cones(n);
  for (PointId p = 0; p < n; ++p)
    for (PointId q : plex.cone(local_to_global[p]))
      cones[p].push_back(global_to_local[q]);

  local.bundle.dim = bundle.dim;
  local.bundle.plex = Plex(cones);
  local.bundle.coordinates = restrict_field(bundle.coordinates, local_to_global);
  local.bundle.regions = restrict_label(bundle.regions, global_to_local);
  local.bundle.boundary = restrict_label(bundle.boundary, global_to_local);
  for (const Field& f : fields)
    local.fields.push_back(restrict_field(f, local_to_global));

  for (PointId c : closure.owned_cells[rank])
    local.owned_cells.push_back(global_to_local[c]);
  std::sort(local.owned_cells.begin(), local.owned_cells.end());
  for (PointId p = 0; p < n; ++p)
    if (closure.owner[local_to_global[p]] != rank)
      local.ghosts.push_back(p);
  return local;
}

} // namespace

//-----------------------------------------------------------------------------
std::size_t StarForest::num_leaves() const
{
  std::size_t n = 0;
  for (const auto& l : leaves)
    n += l.size();
  return n;
}
//-----------------------------------------------------------------------------
PartitionClosure plexmesh::close_partition(const Plex& plex,
                                           const PartitionMap& map)
{
  const std::vector<PointId> cells = plex.height_stratum(0);
  if (map.num_cells() != static_cast<std::int32_t>(cells.size()))
    throw ValidationError("partition covers " + std::to_string(map.num_cells())
                          + " cells but the plex has "
                          + std::to_string(cells.size()));
  if (map.nparts < 1)
    throw ValidationError("partition must have at least one part");

  std::vector<std::int32_t> rank_of(plex.chart_size(), -1);
  PartitionClosure result;
  result.owned_cells.resize(map.nparts);
  for (std::size_t i = 0; i < cells.size(); ++i)
  {
    const std::int32_t r = map.rank_of_cell[i];
    if (r < 0 || r >= map.nparts)
      throw ValidationError("cell " + std::to_string(cells[i])
                            + " assigned to rank " + std::to_string(r)
                            + " outside [0, " + std::to_string(map.nparts)
                            + ")");
    rank_of[cells[i]] = r;
    result.owned_cells[r].push_back(cells[i]);
  }

  result.owner.assign(plex.chart_size(), -1);
  for (std::int32_t r = 0; r < map.nparts; ++r)
    for (PointId c : result.owned_cells[r])
      for (PointId q : plex.closure(c))
        if (result.owner[q] == -1)
          result.owner[q] = r;

  result.points.resize(map.nparts);
  std::vector<std::int32_t> seen(plex.chart_size(), -1);
  for (std::int32_t r = 0; r < map.nparts; ++r)
  {
    auto& points = result.points[r];
    auto add_closure = [&](PointId c)
    {
      for (PointId q : plex.closure(c))
        if (seen[q] != r)
        {
          seen[q] = r;
          points.push_back(q);
        }
    };
    for (PointId c : result.owned_cells[r])
    {
      add_closure(c);
      // One layer of overlap: cells sharing a facet with an owned cell
      for (PointId f : plex.cone(c))
      {
        if (plex.height(f) != 1)
          continue;
        for (PointId neighbor : plex.support(f))
          if (rank_of[neighbor] != r)
            add_closure(neighbor);
      }
    }
    std::sort(points.begin(), points.end());
  }
  return result;
}
//-----------------------------------------------------------------------------
Distribution plexmesh::migrate(const MeshBundle& bundle, const PartitionMap& map,
                               std::int32_t nranks, std::span<const Field> fields)
{
  if (nranks != map.nparts)
    throw ValidationError("partition has " + std::to_string(map.nparts)
                          + " parts but " + std::to_string(nranks)
                          + " ranks were requested");
  const Plex& plex = bundle.plex;
  for (const Field& f : fields)
    if (f.section.num_points() != plex.chart_size())
      throw ValidationError("field '" + f.name
                            + "' is not laid out on the mesh chart");

  const PartitionClosure closure = close_partition(plex, map);

  std::vector<std::vector<PointId>> local_to_global(nranks);
  std::vector<std::vector<PointId>> global_to_local(
      nranks, std::vector<PointId>(plex.chart_size(), -1));
  for (std::int32_t r = 0; r < nranks; ++r)
  {
    auto& l2g = local_to_global[r];
    l2g = closure.points[r];
    std::stable_sort(l2g.begin(), l2g.end(), [&](PointId a, PointId b)
                     { return point_group(plex, a) < point_group(plex, b); });
    for (std::size_t p = 0; p < l2g.size(); ++p)
      global_to_local[r][l2g[p]] = static_cast<PointId>(p);
  }

  // Ranks are independent values: extract them concurrently
  std::vector<std::future<RankLocalMesh>> pending;
  for (std::int32_t r = 0; r < nranks; ++r)
    pending.push_back(std::async(std::launch::async, extract_rank,
                                 std::cref(bundle), r, std::cref(closure),
                                 std::cref(local_to_global[r]),
                                 std::cref(global_to_local[r]), fields));

  Distribution dist;
  dist.sf.leaves.resize(nranks);
  for (std::int32_t r = 0; r < nranks; ++r)
  {
    dist.ranks.push_back(pending[r].get());
    const RankLocalMesh& local = dist.ranks.back();
    for (PointId p : local.ghosts)
    {
      const PointId g = local_to_global[r][p];
      const std::int32_t owner = closure.owner[g];
      dist.sf.leaves[r].push_back({p, owner, global_to_local[owner][g]});
    }

    const Plex& lp = local.bundle.plex;
    for (PointId p = 0; p < lp.chart_size(); ++p)
    {
      dist.report.bytes_topology
          += (static_cast<std::int64_t>(lp.cone(p).size()) + 1) * word_bytes;
      dist.report.bytes_coordinates
          += local.bundle.coordinates.section.dof(p) * word_bytes;
      for (const Field& f : local.fields)
        dist.report.bytes_fields += f.section.dof(p) * word_bytes;
    }
    dist.report.points_per_rank.push_back(lp.chart_size());
  }
  return dist;
}
//-----------------------------------------------------------------------------
std::pair<Halo, Permutation> plexmesh::build_halo(const RankLocalMesh& local,
                                                  const StarForest& sf,
                                                  const Section& section)
{
  const PointId n = local.bundle.plex.chart_size();
  if (section.num_points() != n)
    throw ValidationError("section has " + std::to_string(section.num_points())
                          + " points but rank " + std::to_string(local.rank)
                          + " has " + std::to_string(n));
  if (local.rank < 0 || local.rank >= sf.num_ranks())
    throw ValidationError("star forest has no entry for rank "
                          + std::to_string(local.rank));

  std::vector<SfLeaf> leaves = sf.leaves[local.rank];
  std::vector<bool> is_leaf(n, false);
  for (const SfLeaf& leaf : leaves)
  {
    if (leaf.local < 0 || leaf.local >= n)
      throw ValidationError("star-forest leaf " + std::to_string(leaf.local)
                            + " outside rank " + std::to_string(local.rank)
                            + " chart of size " + std::to_string(n));
    is_leaf[leaf.local] = true;
  }
  std::sort(leaves.begin(), leaves.end(), [](const SfLeaf& a, const SfLeaf& b)
            {
              if (a.owner_rank != b.owner_rank)
                return a.owner_rank < b.owner_rank;
              return a.owner_point < b.owner_point;
            });

  Halo halo;
  std::vector<PointId> order; // new -> old
  order.reserve(n);
  for (PointId p = 0; p < n; ++p)
    if (!is_leaf[p])
    {
      order.push_back(p);
      halo.n_owned += section.dof(p);
    }
  halo.n_owned_points = static_cast<std::int32_t>(order.size());
  for (const SfLeaf& leaf : leaves)
    order.push_back(leaf.local);

  Permutation perm = Permutation::from_inverse(std::move(order));
  for (SfLeaf leaf : leaves)
  {
    leaf.local = perm(leaf.local);
    halo.receives.push_back(leaf);
  }
  return {std::move(halo), std::move(perm)};
}
//-----------------------------------------------------------------------------
void plexmesh::apply_local_permutation(Distribution& dist, std::int32_t rank,
                                       const Permutation& perm)
{
  RankLocalMesh& local = dist.ranks.at(rank);
  local.bundle = apply_permutation(local.bundle, perm);
  std::vector<PointId> l2g(local.local_to_global.size());
  for (PointId p = 0; p < perm.size(); ++p)
    l2g[perm(p)] = local.local_to_global[p];
  local.local_to_global = std::move(l2g);
  for (PointId& c : local.owned_cells)
    c = perm(c);
  std::sort(local.owned_cells.begin(), local.owned_cells.end());
  for (PointId& g : local.ghosts)
    g = perm(g);
  std::sort(local.ghosts.begin(), local.ghosts.end());
  for (Field& f : local.fields)
    f = permute_field(f, perm);

  for (SfLeaf& leaf : dist.sf.leaves.at(rank))
    leaf.local = perm(leaf.local);
  std::sort(dist.sf.leaves[rank].begin(), dist.sf.leaves[rank].end());
  for (auto& leaves : dist.sf.leaves)
    for (SfLeaf& leaf : leaves)
      if (leaf.owner_rank == rank)
        leaf.owner_point = perm(leaf.owner_point);
}
//-----------------------------------------------------------------------------
void plexmesh::validate_star_forest(std::span<const RankLocalMesh> locals,
                                    const StarForest& sf)
{
  const auto nranks = static_cast<std::int32_t>(locals.size());
  if (sf.num_ranks() != nranks)
    throw ValidationError("star forest covers " + std::to_string(sf.num_ranks())
                          + " ranks, expected " + std::to_string(nranks));

  std::vector<std::vector<bool>> is_leaf(nranks);
  for (std::int32_t r = 0; r < nranks; ++r)
  {
    is_leaf[r].assign(locals[r].bundle.plex.chart_size(), false);
    for (const SfLeaf& leaf : sf.leaves[r])
    {
      if (leaf.local < 0 || leaf.local >= locals[r].bundle.plex.chart_size())
        throw ValidationError("leaf outside the chart of rank "
                              + std::to_string(r));
      is_leaf[r][leaf.local] = true;
    }
  }

  for (std::int32_t r = 0; r < nranks; ++r)
  {
    std::vector<PointId> leaf_points;
    for (const SfLeaf& leaf : sf.leaves[r])
    {
      const std::string where = "rank " + std::to_string(r) + " leaf "
                                + std::to_string(leaf.local);
      if (leaf.owner_rank == r)
        throw ValidationError(where + " is owned by its own rank");
      if (leaf.owner_rank < 0 || leaf.owner_rank >= nranks)
        throw ValidationError(where + " names a nonexistent rank");
      const auto& owner = locals[leaf.owner_rank];
      if (leaf.owner_point < 0
          || leaf.owner_point >= owner.bundle.plex.chart_size())
        throw ValidationError(where + " names a point outside the owner chart");
      if (is_leaf[leaf.owner_rank][leaf.owner_point])
        throw ValidationError(where + " resolves to a ghost on rank "
                              + std::to_string(leaf.owner_rank));
      if (owner.local_to_global[leaf.owner_point]
          != locals[r].local_to_global[leaf.local])
        throw ValidationError(where + " does not mirror its owner point");
      leaf_points.push_back(leaf.local);
    }
    std::sort(leaf_points.begin(), leaf_points.end());
    if (leaf_points != locals[r].ghosts)
      throw ValidationError("ghost set of rank " + std::to_string(r)
                            + " differs from its star-forest leaves");
  }
}
//-----------------------------------------------------------------------------
MeshBundle plexmesh::gather_to_root(std::span<const RankLocalMesh> locals,
                                    const StarForest& sf)
{
  if (locals.empty())
    throw ValidationError("nothing to gather");
  const auto nranks = static_cast<std::int32_t>(locals.size());
  if (sf.num_ranks() != nranks)
    throw ValidationError("star forest covers " + std::to_string(sf.num_ranks())
                          + " ranks, expected " + std::to_string(nranks));

  PointId chart = 0;
  for (const auto& local : locals)
    for (PointId g : local.local_to_global)
      chart = std::max(chart, g + 1);

  // Owner rank and owner-local id of every global point
  std::vector<std::int32_t> owner(chart, -1);
  std::vector<PointId> owner_local(chart, -1);
  for (std::int32_t r = 0; r < nranks; ++r)
  {
    const auto& local = locals[r];
    std::vector<bool> is_leaf(local.bundle.plex.chart_size(), false);
    for (const SfLeaf& leaf : sf.leaves[r])
      is_leaf.at(leaf.local) = true;
    for (PointId p = 0; p < local.bundle.plex.chart_size(); ++p)
    {
      if (is_leaf[p])
        continue;
      const PointId g = local.local_to_global[p];
      if (owner[g] != -1)
        throw ValidationError("point " + std::to_string(g)
                              + " is claimed by ranks " + std::to_string(owner[g])
                              + " and " + std::to_string(r));
      owner[g] = r;
      owner_local[g] = p;
    }
  }
  for (PointId g = 0; g < chart; ++g)
    if (owner[g] == -1)
      throw ValidationError("point " + std::to_string(g) + " has no owner");
  for (std::int32_t r = 0; r < nranks; ++r)
    for (const SfLeaf& leaf : sf.leaves[r])
    {
      const PointId g = locals[r].local_to_global.at(leaf.local);
      if (owner[g] != leaf.owner_rank || owner_local[g] != leaf.owner_point)
        throw ValidationError("leaf " + std::to_string(leaf.local) + " on rank "
                              + std::to_string(r)
                              + " does not resolve to the owner of point "
                              + std::to_string(g));
    }

  MeshBundle global;
  global.dim = locals.front().bundle.dim;
  std::vector<std::vector<PointId>> cones(chart);
  std::vector<std::int32_t> coordinate_dofs(chart);
  for (PointId g = 0; g < chart; ++g)
  {
    const auto& local = locals[owner[g]];
    for (PointId q : local.bundle.plex.cone(owner_local[g]))
      cones[g].push_back(local.local_to_global[q]);
    coordinate_dofs[g] = local.bundle.coordinates.section.dof(owner_local[g]);
  }
  global.plex = Plex(cones);
  global.coordinates.name = locals.front().bundle.coordinates.name;
  global.coordinates.section = Section(std::move(coordinate_dofs));
  global.coordinates.values.reserve(global.coordinates.section.total_size());
  for (PointId g = 0; g < chart; ++g)
  {
    const auto x = locals[owner[g]].bundle.coordinates.at(owner_local[g]);
    global.coordinates.values.insert(global.coordinates.values.end(), x.begin(),
                                     x.end());
  }

  for (std::int32_t r = 0; r < nranks; ++r)
  {
    const auto& local = locals[r];
    auto gather_label = [&](const Label& from, Label& to)
    {
      for (const auto& [value, points] : from.data())
        for (PointId p : points)
        {
          const PointId g = local.local_to_global[p];
          if (owner[g] == r)
            to.add(value, g);
        }
    };
    gather_label(local.bundle.regions, global.regions);
    gather_label(local.bundle.boundary, global.boundary);
  }
  return global;
}
