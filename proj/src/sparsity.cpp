#include <plexmesh/sparsity.hpp>

#include <algorithm>
#include <ostream>
#include <string>

using namespace plexmesh;

//-----------------------------------------------------------------------------
CsrPattern::CsrPattern(std::vector<std::vector<std::int32_t>> rows)
{
  const auto n = static_cast<std::int32_t>(rows.size());
  _offsets.reserve(n + 1);
  for (std::int32_t i = 0; i < n; ++i)
  {
    auto& cols = rows[i];
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    if (!cols.empty() && (cols.front() < 0 || cols.back() >= n))
      throw ValidationError("row " + std::to_string(i)
                            + " has a column outside [0, " + std::to_string(n)
                            + ")");
    _columns.insert(_columns.end(), cols.begin(), cols.end());
    _offsets.push_back(static_cast<std::int64_t>(_columns.size()));
  }
  for (std::int32_t i = 0; i < n; ++i)
  {
    if (!contains(i, i))
      throw ValidationError("row " + std::to_string(i) + " has no diagonal");
    for (std::int32_t j : row(i))
      if (!contains(j, i))
        throw ValidationError("pattern is not symmetric at ("
                              + std::to_string(i) + ", " + std::to_string(j)
                              + ")");
  }
}
//-----------------------------------------------------------------------------
bool CsrPattern::contains(std::int32_t i, std::int32_t j) const
{
  const auto r = row(i);
  return std::binary_search(r.begin(), r.end(), j);
}
//-----------------------------------------------------------------------------
CsrPattern plexmesh::p1_pattern(const Plex& plex)
{
  const std::vector<PointId> vertices = plex.depth_stratum(0);
  std::vector<std::int32_t> index(plex.chart_size(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    index[vertices[i]] = static_cast<std::int32_t>(i);

  std::vector<std::vector<std::int32_t>> rows(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    rows[i].push_back(static_cast<std::int32_t>(i));
  for (PointId c : plex.height_stratum(0))
  {
    const auto cell_vertices = closure_vertices(plex, c);
    for (PointId a : cell_vertices)
      for (PointId b : cell_vertices)
        rows[index[a]].push_back(index[b]);
  }
  return CsrPattern(std::move(rows));
}
//-----------------------------------------------------------------------------
CsrPattern plexmesh::p1_pattern(const MeshBundle& bundle)
{
  return p1_pattern(bundle.plex);
}
//-----------------------------------------------------------------------------
std::int64_t plexmesh::bandwidth(const CsrPattern& pattern)
{
  std::int64_t bw = 0;
  for (std::int32_t i = 0; i < pattern.num_rows(); ++i)
  {
    const auto r = pattern.row(i);
    if (!r.empty())
      bw = std::max<std::int64_t>(bw, i - r.front());
  }
  return bw;
}
//-----------------------------------------------------------------------------
std::int64_t plexmesh::profile(const CsrPattern& pattern)
{
  std::int64_t sum = 0;
  for (std::int32_t i = 0; i < pattern.num_rows(); ++i)
  {
    const auto r = pattern.row(i);
    if (!r.empty())
      sum += std::max<std::int64_t>(0, i - r.front());
  }
  return sum;
}
//-----------------------------------------------------------------------------
CsrPattern plexmesh::permute_pattern(const CsrPattern& pattern,
                                     const Permutation& perm)
{
  if (perm.size() != pattern.num_rows())
    throw ValidationError("permutation size " + std::to_string(perm.size())
                          + " does not match pattern size "
                          + std::to_string(pattern.num_rows()));
  std::vector<std::vector<std::int32_t>> rows(pattern.num_rows());
  for (std::int32_t i = 0; i < pattern.num_rows(); ++i)
    for (std::int32_t j : pattern.row(i))
      rows[perm(i)].push_back(perm(j));
  return CsrPattern(std::move(rows));
}
//-----------------------------------------------------------------------------
Permutation plexmesh::induced_vertex_permutation(const Plex& plex,
                                                 const Permutation& perm)
{
  const std::vector<PointId> vertices = plex.depth_stratum(0);
  // Sort vertex indices by their new point id
  std::vector<std::int32_t> by_new(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    by_new[i] = static_cast<std::int32_t>(i);
  std::sort(by_new.begin(), by_new.end(), [&](std::int32_t a, std::int32_t b)
            { return perm(vertices[a]) < perm(vertices[b]); });
  return Permutation::from_inverse(std::move(by_new));
}
//-----------------------------------------------------------------------------
void plexmesh::spy_export(std::ostream& out, const CsrPattern& pattern)
{
  out << "row,col\n";
  for (std::int32_t i = 0; i < pattern.num_rows(); ++i)
    for (std::int32_t j : pattern.row(i))
      out << i << ',' << j << '\n';
}
