#include <plexmesh/permutation.hpp>

#include <string>

using namespace plexmesh;

//-----------------------------------------------------------------------------
Permutation Permutation::from_forward(std::vector<PointId> forward)
{
  const auto n = static_cast<PointId>(forward.size());
  std::vector<PointId> inverse(n, -1);
  for (PointId i = 0; i < n; ++i)
  {
    const PointId j = forward[i];
    if (j < 0 || j >= n)
      throw ValidationError("permutation maps " + std::to_string(i) + " to "
                            + std::to_string(j) + ", outside [0, "
                            + std::to_string(n) + ")");
    if (inverse[j] != -1)
      throw ValidationError("permutation is not injective: "
                            + std::to_string(inverse[j]) + " and "
                            + std::to_string(i) + " both map to "
                            + std::to_string(j));
    inverse[j] = i;
  }
  Permutation perm;
  perm._forward = std::move(forward);
  perm._inverse = std::move(inverse);
  return perm;
}
//-----------------------------------------------------------------------------
Permutation Permutation::from_inverse(std::vector<PointId> inverse)
{
  Permutation p = from_forward(std::move(inverse));
  std::swap(p._forward, p._inverse);
  return p;
}
//-----------------------------------------------------------------------------
Permutation Permutation::identity(std::int32_t n)
{
  std::vector<PointId> id(n);
  for (PointId i = 0; i < n; ++i)
    id[i] = i;
  Permutation perm;
  perm._forward = id;
  perm._inverse = std::move(id);
  return perm;
}
//-----------------------------------------------------------------------------
bool Permutation::is_identity() const
{
  for (PointId i = 0; i < size(); ++i)
    if (_forward[i] != i)
      return false;
  return true;
}
//-----------------------------------------------------------------------------
Permutation Permutation::compose(const Permutation& first) const
{
  if (first.size() != size())
    throw ValidationError("cannot compose permutations of sizes "
                          + std::to_string(size()) + " and "
                          + std::to_string(first.size()));
  std::vector<PointId> forward(size());
  for (PointId i = 0; i < size(); ++i)
    forward[i] = _forward[first(i)];
  return from_forward(std::move(forward));
}
