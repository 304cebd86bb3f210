#include <plexmesh/mesh_io.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

using namespace plexmesh;

namespace
{

int element_dimension(int type)
{
  switch (type)
  {
  case 15:
    return 0;
  case 1:
    return 1;
  case 2:
    return 2;
  case 4:
    return 3;
  default:
    return -1;
  }
}

int element_type(int dim)
{
  constexpr std::array<int, 4> types{15, 1, 2, 4};
  return types.at(dim);
}

/// Line reader tracking the line number for error messages.
class LineReader
{
public:
  explicit LineReader(std::istream& in) : _in(in) {}

  bool next(std::string& line)
  {
    if (!std::getline(_in, line))
      return false;
    ++_line;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    return true;
  }

  std::string require(const std::string& context)
  {
    std::string line;
    if (!next(line))
      throw ParseError("unexpected end of file in " + context);
    return line;
  }

  [[noreturn]] void fail(const std::string& message) const
  {
    throw ParseError("line " + std::to_string(_line) + ": " + message);
  }

private:
  std::istream& _in;
  int _line = 0;
};

std::string trim(const std::string& s)
{
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos)
    return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

void expect_end(LineReader& reader, const std::string& section)
{
  const std::string end = "$End" + section;
  std::string line;
  if (!reader.next(line))
    throw ParseError("$" + section + " without " + end);
  if (trim(line) != end)
    reader.fail("expected " + end + ", found '" + trim(line) + "'");
}

struct Element
{
  int type;
  std::vector<std::int32_t> tags;
  std::vector<std::int64_t> nodes;
};

std::string format_real(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.16g", x);
  return buf;
}

} // namespace

//-----------------------------------------------------------------------------
RawMesh plexmesh::read_gmsh(std::istream& in)
{
  LineReader reader(in);
  bool have_format = false, have_nodes = false, have_elements = false;
  std::map<std::int64_t, std::int32_t> node_index;
  std::vector<std::array<double, 3>> nodes;
  std::vector<Element> elements;

  std::string line;
  while (reader.next(line))
  {
    const std::string header = trim(line);
    if (header.empty())
      continue;
    if (header == "$MeshFormat")
    {
      std::istringstream fmt(reader.require("$MeshFormat"));
      std::string version;
      int file_type = -1, data_size = -1;
      fmt >> version >> file_type >> data_size;
      if (!fmt)
        reader.fail("malformed $MeshFormat line");
      if (version != "2.2")
        reader.fail("unsupported MSH version " + version
                    + " (only 2.2 ASCII is supported)");
      if (file_type != 0)
        reader.fail("binary MSH files are not supported");
      if (data_size != 8)
        reader.fail("unsupported data size " + std::to_string(data_size));
      expect_end(reader, "MeshFormat");
      have_format = true;
    }
    else if (header == "$Nodes")
    {
      if (!have_format)
        reader.fail("$Nodes before $MeshFormat");
      std::int64_t count = -1;
      std::istringstream(reader.require("$Nodes")) >> count;
      if (count < 0)
        reader.fail("malformed node count");
      nodes.reserve(count);
      for (std::int64_t i = 0; i < count; ++i)
      {
        std::string row = reader.require("$Nodes");
        if (trim(row).rfind('$', 0) == 0)
          reader.fail("$Nodes section ended after " + std::to_string(i)
                      + " of " + std::to_string(count) + " nodes");
        std::istringstream rs(row);
        std::int64_t id;
        std::array<double, 3> x{};
        rs >> id >> x[0] >> x[1] >> x[2];
        if (!rs)
          reader.fail("malformed node line '" + row + "'");
        if (!node_index.emplace(id, static_cast<std::int32_t>(nodes.size())).second)
          reader.fail("duplicate node id " + std::to_string(id));
        nodes.push_back(x);
      }
      expect_end(reader, "Nodes");
      have_nodes = true;
    }
    else if (header == "$Elements")
    {
      if (!have_format)
        reader.fail("$Elements before $MeshFormat");
      std::int64_t count = -1;
      std::istringstream(reader.require("$Elements")) >> count;
      if (count < 0)
        reader.fail("malformed element count");
      elements.reserve(count);
      for (std::int64_t i = 0; i < count; ++i)
      {
        std::string row = reader.require("$Elements");
        if (trim(row).rfind('$', 0) == 0)
          reader.fail("$Elements section ended after " + std::to_string(i)
                      + " of " + std::to_string(count) + " elements");
        std::istringstream rs(row);
        std::int64_t id;
        int ntags;
        Element e;
        rs >> id >> e.type >> ntags;
        if (!rs || ntags < 0)
          reader.fail("malformed element line '" + row + "'");
        const int edim = element_dimension(e.type);
        if (edim < 0)
          reader.fail("unsupported element type " + std::to_string(e.type));
        e.tags.resize(ntags);
        for (auto& t : e.tags)
          rs >> t;
        e.nodes.resize(edim + 1);
        for (auto& n : e.nodes)
          rs >> n;
        if (!rs)
          reader.fail("malformed element line '" + row + "'");
        elements.push_back(std::move(e));
      }
      expect_end(reader, "Elements");
      have_elements = true;
    }
    else if (header.front() == '$')
    {
      // Unknown section ($PhysicalNames, $NodeData, ...): skip to its end
      const std::string end = "$End" + header.substr(1);
      std::string skipped;
      bool closed = false;
      while (reader.next(skipped))
        if (trim(skipped) == end)
        {
          closed = true;
          break;
        }
      if (!closed)
        throw ParseError(header + " without " + end);
    }
    else
      reader.fail("unexpected content '" + header + "'");
  }

  if (!have_format)
    throw ParseError("missing $MeshFormat section");
  if (!have_nodes)
    throw ParseError("missing $Nodes section");
  if (!have_elements)
    throw ParseError("missing $Elements section");

  int dim = 0;
  for (const auto& e : elements)
    dim = std::max(dim, element_dimension(e.type));
  if (dim == 0)
    throw ParseError("no cells of maximal dimension");

  RawMesh mesh;
  mesh.dim = dim;
  mesh.coordinates.reserve(nodes.size() * dim);
  for (const auto& x : nodes)
    mesh.coordinates.insert(mesh.coordinates.end(), x.begin(), x.begin() + dim);

  auto resolve = [&](const Element& e)
  {
    std::vector<std::int32_t> vertices;
    for (std::int64_t n : e.nodes)
    {
      auto it = node_index.find(n);
      if (it == node_index.end())
        throw ParseError("element references undefined node "
                         + std::to_string(n));
      vertices.push_back(it->second);
    }
    return vertices;
  };

  for (const auto& e : elements)
  {
    const int edim = element_dimension(e.type);
    const std::int32_t marker = e.tags.empty() ? 0 : e.tags.front();
    if (edim == dim)
    {
      mesh.cells.push_back(resolve(e));
      mesh.cell_region_ids.push_back(marker);
    }
    else if (edim == dim - 1 && edim > 0)
      mesh.boundary_facets.push_back({resolve(e), marker});
  }
  return mesh;
}
//-----------------------------------------------------------------------------
void plexmesh::validate(const RawMesh& mesh)
{
  if (mesh.dim < 1 || mesh.dim > 3)
    throw ValidationError("mesh dimension must be 1, 2 or 3");
  if (mesh.coordinates.size() % mesh.dim != 0)
    throw ValidationError("coordinate array length is not a multiple of dim");
  if (mesh.cell_region_ids.size() != mesh.cells.size())
    throw ValidationError("one region id per cell is required");
  const std::int32_t nv = mesh.num_vertices();
  auto check = [&](const std::vector<std::int32_t>& tuple, std::size_t arity,
                   const std::string& what)
  {
    if (tuple.size() != arity)
      throw ValidationError(what + " has " + std::to_string(tuple.size())
                            + " vertices, expected " + std::to_string(arity));
    for (std::int32_t v : tuple)
      if (v < 0 || v >= nv)
        throw ValidationError(what + " references vertex " + std::to_string(v)
                              + " but the mesh has " + std::to_string(nv)
                              + " vertices");
  };
  for (std::size_t c = 0; c < mesh.cells.size(); ++c)
    check(mesh.cells[c], mesh.dim + 1, "cell " + std::to_string(c));
  for (std::size_t f = 0; f < mesh.boundary_facets.size(); ++f)
    check(mesh.boundary_facets[f].vertices, mesh.dim,
          "boundary facet " + std::to_string(f));
}
//-----------------------------------------------------------------------------
void plexmesh::write_gmsh(std::ostream& out, const RawMesh& mesh)
{
  validate(mesh);
  if (mesh.num_vertices() == 0)
    throw ValidationError("refusing to write a mesh without vertices");

  out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n";
  out << "$Nodes\n" << mesh.num_vertices() << "\n";
  for (std::int32_t v = 0; v < mesh.num_vertices(); ++v)
  {
    out << (v + 1);
    for (int k = 0; k < 3; ++k)
      out << ' ' << format_real(k < mesh.dim ? mesh.coordinates[v * mesh.dim + k] : 0.0);
    out << '\n';
  }
  out << "$EndNodes\n";

  out << "$Elements\n"
      << (mesh.boundary_facets.size() + mesh.cells.size()) << "\n";
  std::int64_t id = 1;
  auto emit = [&](int type, std::int32_t marker,
                  const std::vector<std::int32_t>& vertices)
  {
    out << id++ << ' ' << type << " 2 " << marker << ' ' << marker;
    for (std::int32_t v : vertices)
      out << ' ' << (v + 1);
    out << '\n';
  };
  for (const auto& f : mesh.boundary_facets)
    emit(element_type(mesh.dim - 1), f.marker, f.vertices);
  for (std::size_t c = 0; c < mesh.cells.size(); ++c)
    emit(element_type(mesh.dim), mesh.cell_region_ids[c], mesh.cells[c]);
  out << "$EndElements\n";
}
//-----------------------------------------------------------------------------
MeshBundle plexmesh::raw_to_bundle(const RawMesh& mesh)
{
  validate(mesh);
  MeshBundle bundle;
  bundle.dim = mesh.dim;
  bundle.plex = build_from_cells(mesh.cells, mesh.num_vertices(), mesh.dim);
  const Plex& plex = bundle.plex;

  std::vector<std::int32_t> dofs_per_depth(mesh.dim + 1, 0);
  dofs_per_depth[0] = mesh.dim;
  bundle.coordinates.name = "coordinates";
  bundle.coordinates.section = section_from_depth_dofs(plex, dofs_per_depth);
  // Vertex points are numbered in input vertex order
  bundle.coordinates.values = mesh.coordinates;

  const auto ncells = static_cast<PointId>(mesh.cells.size());
  for (PointId c = 0; c < ncells; ++c)
    bundle.regions.add(mesh.cell_region_ids[c], c);

  std::map<std::vector<PointId>, PointId> facet_by_vertices;
  for (PointId p : plex.depth_stratum(mesh.dim - 1))
    facet_by_vertices.emplace(closure_vertices(plex, p), p);
  for (const auto& facet : mesh.boundary_facets)
  {
    std::vector<PointId> key;
    for (std::int32_t v : facet.vertices)
      key.push_back(ncells + v);
    std::sort(key.begin(), key.end());
    auto it = facet_by_vertices.find(key);
    if (it == facet_by_vertices.end())
    {
      std::string tuple;
      for (std::int32_t v : facet.vertices)
        tuple += (tuple.empty() ? "" : ",") + std::to_string(v);
      throw ValidationError("boundary facet (" + tuple
                            + ") is not a facet of any cell");
    }
    bundle.boundary.add(facet.marker, it->second);
  }
  return bundle;
}
//-----------------------------------------------------------------------------
RawMesh plexmesh::bundle_to_raw(const MeshBundle& bundle)
{
  const Plex& plex = bundle.plex;
  const std::vector<PointId> vertices = plex.depth_stratum(0);
  std::vector<std::int32_t> vertex_index(plex.chart_size(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    vertex_index[vertices[i]] = static_cast<std::int32_t>(i);

  RawMesh mesh;
  mesh.dim = bundle.dim;
  for (PointId v : vertices)
  {
    const auto x = bundle.coordinates.at(v);
    if (static_cast<int>(x.size()) != bundle.dim)
      throw ValidationError("vertex " + std::to_string(v) + " has "
                            + std::to_string(x.size())
                            + " coordinates, expected "
                            + std::to_string(bundle.dim));
    mesh.coordinates.insert(mesh.coordinates.end(), x.begin(), x.end());
  }

  auto tuple = [&](PointId p)
  {
    std::vector<std::int32_t> t;
    for (PointId v : closure_vertices(plex, p))
      t.push_back(vertex_index[v]);
    return t;
  };

  for (PointId c : plex.depth_stratum(bundle.dim))
  {
    mesh.cells.push_back(tuple(c));
    mesh.cell_region_ids.push_back(bundle.regions.value_of(c, 0));
  }

  std::vector<std::pair<PointId, std::int32_t>> marked;
  for (const auto& [value, points] : bundle.boundary.data())
    for (PointId p : points)
      marked.emplace_back(p, value);
  std::sort(marked.begin(), marked.end());
  for (const auto& [p, value] : marked)
    mesh.boundary_facets.push_back({tuple(p), value});
  return mesh;
}
//-----------------------------------------------------------------------------
std::vector<std::array<double, 3>>
plexmesh::cell_centroids(const MeshBundle& bundle)
{
  std::vector<std::array<double, 3>> centroids;
  for (PointId c : bundle.plex.depth_stratum(bundle.dim))
  {
    std::array<double, 3> x{};
    const auto vertices = closure_vertices(bundle.plex, c);
    for (PointId v : vertices)
    {
      const auto xv = bundle.coordinates.at(v);
      for (std::size_t k = 0; k < xv.size() && k < 3; ++k)
        x[k] += xv[k];
    }
    for (double& xk : x)
      xk /= static_cast<double>(vertices.size());
    centroids.push_back(x);
  }
  return centroids;
}
