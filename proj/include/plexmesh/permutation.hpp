#pragma once

#include <plexmesh/plex.hpp>

#include <vector>

namespace plexmesh
{

/// Bijection on [0, n) stored with both directions.
class Permutation
{
public:
  Permutation() = default;

  /// Build from the old->new map. Throws ValidationError unless `forward`
  /// is a bijection on [0, forward.size()).
  static Permutation from_forward(std::vector<PointId> forward);

  /// Build from the new->old map (an ordering list).
  static Permutation from_inverse(std::vector<PointId> inverse);

  static Permutation identity(std::int32_t n);

  std::int32_t size() const { return static_cast<std::int32_t>(_forward.size()); }

  /// New index of old index i.
  PointId operator()(PointId i) const { return _forward[i]; }
  PointId forward(PointId i) const { return _forward[i]; }
  /// Old index that moved to new index i.
  PointId inverse(PointId i) const { return _inverse[i]; }

  const std::vector<PointId>& forward_map() const { return _forward; }
  const std::vector<PointId>& inverse_map() const { return _inverse; }

  bool is_identity() const;

  /// this after `first`: i -> (*this)(first(i)).
  Permutation compose(const Permutation& first) const;

  bool operator==(const Permutation&) const = default;

private:
  std::vector<PointId> _forward;
  std::vector<PointId> _inverse;
};

} // namespace plexmesh
