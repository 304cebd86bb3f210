#include <plexmesh/section.hpp>

#include <string>

using namespace plexmesh;

//-----------------------------------------------------------------------------
Section::Section(std::vector<std::int32_t> dofs) : _dofs(std::move(dofs))
{
  _offsets.resize(_dofs.size() + 1);
  _offsets[0] = 0;
  for (std::size_t p = 0; p < _dofs.size(); ++p)
  {
    if (_dofs[p] < 0)
      throw ValidationError("negative dof count on point " + std::to_string(p));
    _offsets[p + 1] = _offsets[p] + _dofs[p];
  }
}
//-----------------------------------------------------------------------------
Section plexmesh::section_from_depth_dofs(
    const Plex& plex, std::span<const std::int32_t> dofs_per_depth)
{
  const auto expected = static_cast<std::size_t>(plex.dimension() + 1);
  if (dofs_per_depth.size() != expected)
    throw ValidationError("expected " + std::to_string(expected)
                          + " per-depth dof counts, got "
                          + std::to_string(dofs_per_depth.size()));
  std::vector<std::int32_t> dofs(plex.chart_size());
  for (PointId p = 0; p < plex.chart_size(); ++p)
    dofs[p] = dofs_per_depth[plex.depth(p)];
  return Section(std::move(dofs));
}
//-----------------------------------------------------------------------------
Section plexmesh::permute_section(const Section& section,
                                  const Permutation& perm)
{
  if (perm.size() != section.num_points())
    throw ValidationError("permutation size " + std::to_string(perm.size())
                          + " does not match section size "
                          + std::to_string(section.num_points()));
  std::vector<std::int32_t> dofs(section.num_points());
  for (PointId p = 0; p < section.num_points(); ++p)
    dofs[perm(p)] = section.dof(p);
  return Section(std::move(dofs));
}
//-----------------------------------------------------------------------------
Field plexmesh::permute_field(const Field& field, const Permutation& perm)
{
  Field out{field.name, permute_section(field.section, perm), {}};
  out.values.resize(field.values.size());
  for (PointId p = 0; p < field.section.num_points(); ++p)
  {
    const auto src = field.at(p);
    std::copy(src.begin(), src.end(),
              out.values.begin() + out.section.offset(perm(p)));
  }
  return out;
}
