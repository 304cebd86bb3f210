#include <plexmesh/label.hpp>

using namespace plexmesh;

//-----------------------------------------------------------------------------
std::vector<std::int32_t> Label::values() const
{
  std::vector<std::int32_t> v;
  v.reserve(_values.size());
  for (const auto& [value, points] : _values)
    v.push_back(value);
  return v;
}
//-----------------------------------------------------------------------------
std::vector<PointId> Label::points(std::int32_t value) const
{
  auto it = _values.find(value);
  if (it == _values.end())
    return {};
  return {it->second.begin(), it->second.end()};
}
//-----------------------------------------------------------------------------
std::int32_t Label::value_of(PointId p, std::int32_t fallback) const
{
  for (const auto& [value, points] : _values)
    if (points.contains(p))
      return value;
  return fallback;
}
//-----------------------------------------------------------------------------
std::size_t Label::size() const
{
  std::size_t n = 0;
  for (const auto& [value, points] : _values)
    n += points.size();
  return n;
}
