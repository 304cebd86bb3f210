#pragma once

#include <plexmesh/plex.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

namespace plexmesh
{

/// Named integer markers on plex points (Gmsh physical groups, regions).
class Label
{
public:
  Label() = default;
  explicit Label(std::string name) : _name(std::move(name)) {}

  const std::string& name() const { return _name; }

  void add(std::int32_t value, PointId p) { _values[value].insert(p); }

  /// Marker values present, ascending.
  std::vector<std::int32_t> values() const;

  /// Points carrying `value`, ascending. Empty if the value is absent.
  std::vector<PointId> points(std::int32_t value) const;

  /// Smallest value attached to p, or `fallback` if p is unmarked.
  std::int32_t value_of(PointId p, std::int32_t fallback) const;

  /// Total number of (value, point) pairs.
  std::size_t size() const;

  bool empty() const { return _values.empty(); }

  const std::map<std::int32_t, std::set<PointId>>& data() const
  {
    return _values;
  }

  bool operator==(const Label&) const = default;

private:
  std::string _name;
  std::map<std::int32_t, std::set<PointId>> _values;
};

} // namespace plexmesh
