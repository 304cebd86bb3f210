#pragma once

#include <plexmesh/mesh_io.hpp>
#include <plexmesh/permutation.hpp>

#include <iosfwd>
#include <span>
#include <vector>

namespace plexmesh
{

/// Symmetric sparsity pattern in CSR form with sorted columns and a stored
/// diagonal.
class CsrPattern
{
public:
  CsrPattern() = default;

  /// Build from per-row column lists; columns are sorted and deduplicated.
  /// Throws ValidationError if the result is not symmetric with a full
  /// diagonal.
  explicit CsrPattern(std::vector<std::vector<std::int32_t>> rows);

  std::int32_t num_rows() const
  {
    return static_cast<std::int32_t>(_offsets.size()) - 1;
  }
  std::int64_t nnz() const { return static_cast<std::int64_t>(_columns.size()); }

  std::span<const std::int32_t> row(std::int32_t i) const
  {
    return {_columns.data() + _offsets[i],
            static_cast<std::size_t>(_offsets[i + 1] - _offsets[i])};
  }

  bool contains(std::int32_t i, std::int32_t j) const;

  const std::vector<std::int64_t>& offsets() const { return _offsets; }
  const std::vector<std::int32_t>& columns() const { return _columns; }

  bool operator==(const CsrPattern&) const = default;

private:
  std::vector<std::int64_t> _offsets{0};
  std::vector<std::int32_t> _columns;
};

/// P1 pattern: rows are vertices in ascending point order; (i, j) is stored
/// iff vertices i and j lie in the closure of a common cell.
CsrPattern p1_pattern(const MeshBundle& bundle);
CsrPattern p1_pattern(const Plex& plex);

/// max_i (i - min column of row i).
std::int64_t bandwidth(const CsrPattern& pattern);

/// sum_i (i - min column of row i).
std::int64_t profile(const CsrPattern& pattern);

/// Symmetric row/column relabeling: entry (i, j) moves to (perm(i), perm(j)).
CsrPattern permute_pattern(const CsrPattern& pattern, const Permutation& perm);

/// Permutation of vertex indices induced by a chart permutation: vertex i
/// (i-th vertex in ascending point order) moves to the rank of its new
/// point id among all new vertex ids.
Permutation induced_vertex_permutation(const Plex& plex, const Permutation& perm);

/// "row,col" header followed by one line per stored entry, row-major.
void spy_export(std::ostream& out, const CsrPattern& pattern);

} // namespace plexmesh
