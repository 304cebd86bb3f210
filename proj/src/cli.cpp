#include <plexmesh/cli.hpp>
#include <plexmesh/distribute.hpp>
#include <plexmesh/mesh_io.hpp>
#include <plexmesh/partition.hpp>
#include <plexmesh/renumber.hpp>
#include <plexmesh/sparsity.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>

using json = nlohmann::ordered_json;

namespace plexmesh::cli
{
namespace
{

/// Raised for unreadable/unwritable files; maps to exit code 2.
class FileError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class Stopwatch
{
public:
  double lap()
  {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - _last).count();
    _last = now;
    return s;
  }

private:
  std::chrono::steady_clock::time_point _last = std::chrono::steady_clock::now();
};

MeshBundle load(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw FileError("cannot open '" + path + "'");
  return raw_to_bundle(read_gmsh(in));
}

void save_mesh(const std::filesystem::path& path, const MeshBundle& bundle)
{
  std::ofstream out(path);
  if (!out)
    throw FileError("cannot write '" + path.string() + "'");
  write_gmsh(out, bundle_to_raw(bundle));
  if (!out)
    throw FileError("error writing '" + path.string() + "'");
}

void save_json(const std::filesystem::path& path, const json& j)
{
  std::ofstream out(path);
  if (!out)
    throw FileError("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

std::vector<std::int64_t> stratum_sizes(const Plex& plex, bool by_height)
{
  std::vector<std::int64_t> sizes(plex.dimension() + 1, 0);
  for (PointId p = 0; p < plex.chart_size(); ++p)
  {
    const auto level = by_height ? plex.height(p) : plex.depth(p);
    if (level >= static_cast<std::int32_t>(sizes.size()))
      sizes.resize(level + 1, 0);
    ++sizes[level];
  }
  return sizes;
}

PartitionMap partition_bundle(const MeshBundle& bundle, std::int32_t nparts,
                              PartitionMethod method, DualGraph* graph_out = nullptr)
{
  DualGraph graph = build_dual_graph(bundle.plex);
  const auto centroids = cell_centroids(bundle);
  PartitionMap map = partition_cells(graph, nparts, method, centroids);
  if (graph_out)
    *graph_out = std::move(graph);
  return map;
}

json migration_json(const MigrationReport& report)
{
  return {{"bytes_topology", report.bytes_topology},
          {"bytes_coordinates", report.bytes_coordinates},
          {"bytes_fields", report.bytes_fields},
          {"bytes_total", report.total()},
          {"points_per_rank", report.points_per_rank}};
}

json star_forest_json(const StarForest& sf)
{
  json ranks = json::array();
  for (std::int32_t r = 0; r < sf.num_ranks(); ++r)
  {
    json leaves = json::array();
    for (const SfLeaf& leaf : sf.leaves[r])
      leaves.push_back({leaf.local, leaf.owner_rank, leaf.owner_point});
    ranks.push_back({{"rank", r}, {"leaves", std::move(leaves)}});
  }
  return {{"nranks", sf.num_ranks()}, {"ranks", std::move(ranks)}};
}

/// Synthetic P1 fields: one dof per vertex, value k + first coordinate.
std::vector<Field> synthetic_p1_fields(const MeshBundle& bundle, std::int32_t count)
{
  std::vector<std::int32_t> dofs_per_depth(bundle.plex.dimension() + 1, 0);
  dofs_per_depth[0] = 1;
  const Section section = section_from_depth_dofs(bundle.plex, dofs_per_depth);
  std::vector<Field> fields;
  for (std::int32_t k = 0; k < count; ++k)
  {
    Field f{"field" + std::to_string(k), section, {}};
    for (PointId v : bundle.plex.depth_stratum(0))
      f.values.push_back(k + bundle.coordinates.at(v)[0]);
    fields.push_back(std::move(f));
  }
  return fields;
}

//-----------------------------------------------------------------------------
json cmd_info(const std::string& file)
{
  const MeshBundle bundle = load(file);
  const Plex& plex = bundle.plex;
  return {{"command", "info"},
          {"dim", bundle.dim},
          {"chart_size", plex.chart_size()},
          {"cells", plex.depth_stratum(bundle.dim).size()},
          {"vertices", plex.depth_stratum(0).size()},
          {"depth_strata", stratum_sizes(plex, false)},
          {"height_strata", stratum_sizes(plex, true)},
          {"region_markers", bundle.regions.values()},
          {"boundary_markers", bundle.boundary.values()},
          {"boundary_facets", bundle.boundary.size()}};
}

json cmd_partition(const std::string& file, std::int32_t nparts,
                   PartitionMethod method, const std::string& csv_path)
{
  const MeshBundle bundle = load(file);
  DualGraph graph;
  const PartitionMap map = partition_bundle(bundle, nparts, method, &graph);
  const PartitionStats stats = partition_stats(graph, map);

  std::ofstream csv(csv_path);
  if (!csv)
    throw FileError("cannot write '" + csv_path + "'");
  csv << "cell,rank\n";
  for (std::int32_t c = 0; c < map.num_cells(); ++c)
    csv << c << ',' << map.rank_of_cell[c] << '\n';

  return {{"command", "partition"},
          {"method", to_string(method)},
          {"nparts", nparts},
          {"cells", map.num_cells()},
          {"dual_edges", graph.num_edges()},
          {"edge_cut", stats.edge_cut},
          {"imbalance", stats.imbalance},
          {"part_sizes", map.part_sizes()}};
}

json cmd_distribute(const std::string& file, std::int32_t nparts,
                    PartitionMethod method, const std::string& out_dir)
{
  const MeshBundle bundle = load(file);
  const PartitionMap map = partition_bundle(bundle, nparts, method);
  const Distribution dist = migrate(bundle, map, nparts);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec)
    throw FileError("cannot create '" + out_dir + "': " + ec.message());
  const std::filesystem::path dir(out_dir);

  json ranks = json::array();
  for (const RankLocalMesh& local : dist.ranks)
  {
    save_mesh(dir / ("rank" + std::to_string(local.rank) + ".msh"), local.bundle);
    ranks.push_back({{"rank", local.rank},
                     {"points", local.bundle.plex.chart_size()},
                     {"owned_cells", local.owned_cells.size()},
                     {"ghost_points", local.ghosts.size()}});
  }
  json report = {{"command", "distribute"},
                 {"method", to_string(method)},
                 {"nparts", nparts},
                 {"migration", migration_json(dist.report)},
                 {"ranks", std::move(ranks)}};
  save_json(dir / "sf.json", star_forest_json(dist.sf));
  save_json(dir / "report.json", report);
  return report;
}

json cmd_reorder(const std::string& file, const std::string& out_file)
{
  const MeshBundle bundle = load(file);
  const CsrPattern before = p1_pattern(bundle);
  const MeshBundle reordered = apply_permutation(bundle, rcm_ordering(bundle.plex));
  const CsrPattern after = p1_pattern(reordered);
  if (!out_file.empty())
    save_mesh(out_file, reordered);
  return {{"command", "reorder"},
          {"vertices", before.num_rows()},
          {"nnz", before.nnz()},
          {"bandwidth_before", bandwidth(before)},
          {"bandwidth_after", bandwidth(after)},
          {"profile_before", profile(before)},
          {"profile_after", profile(after)}};
}

void cmd_spy(const std::string& file, bool rcm, std::ostream& out)
{
  MeshBundle bundle = load(file);
  if (rcm)
    bundle = apply_permutation(bundle, rcm_ordering(bundle.plex));
  spy_export(out, p1_pattern(bundle));
}

json bench_workflow(const std::string& file, const std::string& workflow,
                    std::int32_t nparts, PartitionMethod method,
                    std::int32_t nfields)
{
  Stopwatch clock;
  const MeshBundle bundle = load(file);
  // The preprocessor path builds the full simulation state before
  // partitioning; the runtime path moves topology and coordinates only.
  const std::vector<Field> fields
      = workflow == "preprocessor" ? synthetic_p1_fields(bundle, nfields)
                                   : std::vector<Field>{};
  const double t_read = clock.lap();

  const PartitionMap map = partition_bundle(bundle, nparts, method);
  const double t_partition = clock.lap();

  Distribution dist = migrate(bundle, map, nparts, fields);
  const double t_migrate = clock.lap();

  for (std::int32_t r = 0; r < nparts; ++r)
    apply_local_permutation(dist, r, rcm_ordering(dist.ranks[r].bundle.plex));
  const double t_reorder = clock.lap();

  return {{"workflow", workflow},
          {"migration", migration_json(dist.report)},
          {"timing",
           {{"read_s", t_read},
            {"partition_s", t_partition},
            {"migrate_s", t_migrate},
            {"reorder_s", t_reorder},
            {"total_s", t_read + t_partition + t_migrate + t_reorder}}}};
}

json cmd_bench(const std::string& file, std::int32_t nparts,
               PartitionMethod method, std::int32_t nfields)
{
  if (nfields < 0)
    throw ValidationError("--fields must be non-negative");
  json reports = json::array();
  reports.push_back(bench_workflow(file, "preprocessor", nparts, method, nfields));
  reports.push_back(bench_workflow(file, "runtime-distribute", nparts, method, nfields));
  return {{"command", "bench"},
          {"method", to_string(method)},
          {"nparts", nparts},
          {"fields", nfields},
          {"reports", std::move(reports)}};
}

} // namespace

//-----------------------------------------------------------------------------
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"plexmesh: layered-DAG mesh topology, distribution and renumbering"};
  app.require_subcommand(1);

  std::string file;
  std::int32_t nparts = 1;
  std::string method_name = "greedy-bfs";
  std::string csv_path = "partition.csv";
  std::string out_dir = "distribute_out";
  std::string out_file;
  std::int32_t nfields = 0;
  bool rcm = false;

  const std::vector<std::string> methods{"greedy-bfs", "coordinate-bisection"};

  auto* info = app.add_subcommand("info", "Summarise the strata of a mesh");
  info->add_option("file", file, "Gmsh 2.2 ASCII mesh")->required();

  auto* partition = app.add_subcommand("partition", "Partition the cells of a mesh");
  partition->add_option("file", file, "Gmsh 2.2 ASCII mesh")->required();
  partition->add_option("--nparts", nparts, "Number of parts")->required();
  partition->add_option("--method", method_name, "Partitioning heuristic")
      ->check(CLI::IsMember(methods));
  partition->add_option("--csv", csv_path, "Per-cell rank CSV output");

  auto* distribute = app.add_subcommand("distribute", "Distribute a mesh over simulated ranks");
  distribute->add_option("file", file, "Gmsh 2.2 ASCII mesh")->required();
  distribute->add_option("--nparts", nparts, "Number of ranks")->required();
  distribute->add_option("--method", method_name, "Partitioning heuristic")
      ->check(CLI::IsMember(methods));
  distribute->add_option("--out", out_dir, "Output directory");

  auto* reorder = app.add_subcommand("reorder", "Apply RCM renumbering");
  reorder->add_option("file", file, "Gmsh 2.2 ASCII mesh")->required();
  reorder->add_option("--out", out_file, "Reordered mesh output");

  auto* spy = app.add_subcommand("spy", "Export the P1 sparsity pattern as CSV");
  spy->add_option("file", file, "Gmsh 2.2 ASCII mesh")->required();
  spy->add_flag("--rcm", rcm, "Apply RCM renumbering first");

  auto* bench = app.add_subcommand("bench", "Compare preprocessor and runtime start-up");
  bench->add_option("file", file, "Gmsh 2.2 ASCII mesh")->required();
  bench->add_option("--nparts", nparts, "Number of ranks")->required();
  bench->add_option("--fields", nfields, "Synthetic P1 fields in the preprocessor path")
      ->required();
  bench->add_option("--method", method_name, "Partitioning heuristic")
      ->check(CLI::IsMember(methods));

  try
  {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  }
  catch (const CLI::CallForHelp&)
  {
    out << app.help();
    return ok;
  }
  catch (const CLI::ParseError& e)
  {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }

  try
  {
    const PartitionMethod method = *parse_partition_method(method_name);
    json result;
    if (info->parsed())
      result = cmd_info(file);
    else if (partition->parsed())
      result = cmd_partition(file, nparts, method, csv_path);
    else if (distribute->parsed())
      result = cmd_distribute(file, nparts, method, out_dir);
    else if (reorder->parsed())
      result = cmd_reorder(file, out_file);
    else if (bench->parsed())
      result = cmd_bench(file, nparts, method, nfields);
    else
    {
      cmd_spy(file, rcm, out);
      return ok;
    }
    out << result.dump(2) << '\n';
    return ok;
  }
  catch (const FileError& e)
  {
    err << "error: " << e.what() << '\n';
    return file_error;
  }
  catch (const ParseError& e)
  {
    err << "error: " << file << ": " << e.what() << '\n';
    return file_error;
  }
  catch (const ValidationError& e)
  {
    err << "error: " << e.what() << '\n';
    return validation_error;
  }
}

} // namespace plexmesh::cli
