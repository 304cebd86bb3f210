#pragma once

#include <plexmesh/permutation.hpp>
#include <plexmesh/plex.hpp>

#include <span>
#include <string>
#include <vector>

namespace plexmesh
{

/// Data layout over plex points: each point owns a contiguous block of
/// `dof(p)` entries starting at `offset(p)`. Offsets are the exclusive prefix
/// sum of the dof counts in ascending point order and are always derived,
/// never set directly.
class Section
{
public:
  Section() = default;
  explicit Section(std::vector<std::int32_t> dofs);

  std::int32_t num_points() const { return static_cast<std::int32_t>(_dofs.size()); }
  std::int32_t dof(PointId p) const { return _dofs.at(p); }
  std::int64_t offset(PointId p) const { return _offsets.at(p); }
  std::int64_t total_size() const { return _offsets.back(); }

  const std::vector<std::int32_t>& dofs() const { return _dofs; }

  bool operator==(const Section&) const = default;

private:
  std::vector<std::int32_t> _dofs;
  std::vector<std::int64_t> _offsets{0};
};

/// A named array of reals laid out by a section.
struct Field
{
  std::string name;
  Section section;
  std::vector<double> values;

  std::span<const double> at(PointId p) const
  {
    return std::span<const double>(values).subspan(section.offset(p),
                                                   section.dof(p));
  }

  bool operator==(const Field&) const = default;
};

/// Uniform layout: every point at depth k gets dofs_per_depth[k] entries.
/// Requires dofs_per_depth.size() == plex.dimension() + 1.
Section section_from_depth_dofs(const Plex& plex,
                                std::span<const std::int32_t> dofs_per_depth);

/// Move dof counts with their points (point p's count lands on perm(p)).
Section permute_section(const Section& section, const Permutation& perm);

/// Move field values with their points; the field's layout is permuted too.
Field permute_field(const Field& field, const Permutation& perm);

} // namespace plexmesh
