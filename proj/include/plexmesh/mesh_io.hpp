#pragma once

#include <plexmesh/label.hpp>
#include <plexmesh/plex.hpp>
#include <plexmesh/section.hpp>

#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace plexmesh
{

/// Raised for malformed or unsupported mesh files.
class ParseError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A facet of the boundary carrying a Gmsh physical marker.
struct BoundaryFacet
{
  std::vector<std::int32_t> vertices;
  std::int32_t marker = 0;

  bool operator==(const BoundaryFacet&) const = default;
};

/// Cell-vertex mesh as stored in a file. Vertex ids are 0-based.
struct RawMesh
{
  int dim = 0;
  /// Flat vertex coordinates, `dim` reals per vertex.
  std::vector<double> coordinates;
  std::vector<std::vector<std::int32_t>> cells;
  std::vector<std::int32_t> cell_region_ids;
  std::vector<BoundaryFacet> boundary_facets;

  std::int32_t num_vertices() const
  {
    return dim > 0 ? static_cast<std::int32_t>(coordinates.size() / dim) : 0;
  }

  bool operator==(const RawMesh&) const = default;
};

/// Interpolated topology together with coordinates and markers.
struct MeshBundle
{
  int dim = 0;
  Plex plex;
  /// `dim` dofs on every vertex, none elsewhere.
  Field coordinates;
  /// Region ids on cell points.
  Label regions{"region"};
  /// Boundary markers on facet points.
  Label boundary{"boundary"};

  bool operator==(const MeshBundle&) const = default;
};

/// Parse a Gmsh MSH 2.2 ASCII stream. Element types 1 (line), 2 (triangle)
/// and 4 (tetrahedron) are understood; type 15 (point) is skipped. Elements
/// of the highest dimension become cells, those one dimension lower become
/// boundary facets, lower ones are ignored.
RawMesh read_gmsh(std::istream& in);

/// Emit MSH 2.2 ASCII: boundary facets first, then cells, 1-based ids,
/// coordinates padded to three components with 16 significant digits.
void write_gmsh(std::ostream& out, const RawMesh& mesh);

/// Check the RawMesh invariants (arity, id ranges, array sizes).
void validate(const RawMesh& mesh);

MeshBundle raw_to_bundle(const RawMesh& mesh);

/// Inverse of raw_to_bundle up to vertex order inside each cell: vertices
/// and cells are emitted in ascending point order, cell and facet vertex
/// tuples sorted by vertex point id.
RawMesh bundle_to_raw(const MeshBundle& bundle);

/// Per-cell centroid, three components (unused components zero), in
/// ascending cell point order.
std::vector<std::array<double, 3>> cell_centroids(const MeshBundle& bundle);

} // namespace plexmesh
