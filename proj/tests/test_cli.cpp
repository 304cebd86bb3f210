#include <doctest.h>
#include <cli_run.hpp>
#include <fixtures.hpp>
#include <schema_check.hpp>

#include <fstream>

using fixtures::run_cli;
using json = nlohmann::json;

namespace
{

json parse_ok(const fixtures::CliResult& r)
{
  INFO(r.err);
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

void check_schema(const json& j, const std::string& schema)
{
  const auto errors = fixtures::schema_errors(j, schema);
  for (const auto& e : errors)
    FAIL_CHECK(schema << " " << e);
}

std::string slurp(const std::string& path)
{
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

TEST_CASE("info")
{
  const json tet = parse_ok(run_cli({"info", fixtures::corpus_path("tet.msh")}));
  check_schema(tet, "info.schema.json");
  CHECK(tet["dim"] == 3);
  CHECK(tet["chart_size"] == 15);
  CHECK(tet["depth_strata"] == json{4, 6, 4, 1});
  CHECK(tet["height_strata"] == json{1, 4, 6, 4});

  const json square = parse_ok(run_cli({"info", fixtures::corpus_path("unit_square.msh")}));
  CHECK(square["cells"] == 2);
  CHECK(square["boundary_markers"] == json{1, 2, 3, 4});
  CHECK(square["boundary_facets"] == 4);
}

TEST_CASE("exit codes")
{
  fixtures::TempDir tmp;
  SUBCASE("usage")
  {
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"frobnicate"}).code == 1);
    CHECK(run_cli({"partition", fixtures::corpus_path("grid4x4.msh")}).code == 1);
    CHECK(run_cli({"partition", fixtures::corpus_path("grid4x4.msh"), "--nparts", "2",
                   "--method", "metis"})
              .code
          == 1);
  }
  SUBCASE("missing or malformed file")
  {
    CHECK(run_cli({"info", tmp / "absent.msh"}).code == 2);
    std::ofstream(tmp / "bad.msh") << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\nxyz\n";
    CHECK(run_cli({"info", tmp / "bad.msh"}).code == 2);
  }
  SUBCASE("validation")
  {
    const std::string two = fixtures::corpus_path("two_triangles.msh");
    CHECK(run_cli({"partition", two, "--nparts", "3", "--csv", tmp / "p.csv"}).code == 3);
    CHECK(run_cli({"distribute", two, "--nparts", "0", "--out", tmp / "d"}).code == 3);
    CHECK(run_cli({"bench", two, "--nparts", "2", "--fields", "-1"}).code == 3);
    std::ofstream(tmp / "degenerate.msh") << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n"
                                             "$Nodes\n3\n1 0 0 0\n2 1 0 0\n3 0 1 0\n$EndNodes\n"
                                             "$Elements\n1\n1 2 2 0 0 1 2 2\n$EndElements\n";
    const auto r = run_cli({"info", tmp / "degenerate.msh"});
    CHECK(r.code == 3);
    CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("partition writes a CSV with one row per cell")
{
  fixtures::TempDir tmp;
  const json j = parse_ok(run_cli({"partition", fixtures::corpus_path("grid4x4.msh"),
                                   "--nparts", "4", "--csv", tmp / "p.csv"}));
  check_schema(j, "partition.schema.json");
  const std::string csv = slurp(tmp / "p.csv");
  CHECK(csv.rfind("cell,rank\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 33);
  CHECK(j["part_sizes"] == json{8, 8, 8, 8});
}

TEST_CASE("distribute writes per-rank meshes, a star forest and a report")
{
  fixtures::TempDir tmp;
  const std::string dir = tmp / "out";
  const json j = parse_ok(run_cli({"distribute", fixtures::corpus_path("grid4x4.msh"),
                                   "--nparts", "3", "--out", dir}));
  check_schema(j, "distribute.schema.json");
  const json sf = json::parse(slurp(dir + "/sf.json"));
  check_schema(sf, "sf.schema.json");
  CHECK(json::parse(slurp(dir + "/report.json")) == j);

  std::int64_t owned = 0;
  for (int r = 0; r < 3; ++r)
  {
    const auto raw = fixtures::read_mesh_file(dir + "/rank" + std::to_string(r) + ".msh");
    CHECK(static_cast<std::int64_t>(raw.cells.size()) > 0);
    owned += j["ranks"][r]["owned_cells"].get<std::int64_t>();
    CHECK(sf["ranks"][r]["leaves"].size() == j["ranks"][r]["ghost_points"]);
  }
  CHECK(owned == 32);
}

TEST_CASE("reorder and spy")
{
  fixtures::TempDir tmp;
  const std::string grid = fixtures::corpus_path("grid32x32.msh");
  const json j = parse_ok(run_cli({"reorder", grid, "--out", tmp / "r.msh"}));
  check_schema(j, "reorder.schema.json");
  CHECK(j["bandwidth_after"] <= j["bandwidth_before"]);
  CHECK(j["vertices"] == 33 * 33);

  const json again = parse_ok(run_cli({"reorder", tmp / "r.msh"}));
  CHECK(again["bandwidth_before"] == j["bandwidth_after"]);
  CHECK(again["nnz"] == j["nnz"]);

  const auto spy = run_cli({"spy", fixtures::corpus_path("tet.msh")});
  CHECK(spy.code == 0);
  CHECK(spy.out.rfind("row,col\n0,0\n0,1\n", 0) == 0);
  const auto spy_rcm = run_cli({"spy", grid, "--rcm"});
  CHECK(std::count(spy_rcm.out.begin(), spy_rcm.out.end(), '\n')
        == j["nnz"].get<std::int64_t>() + 1);
}

TEST_CASE("bench")
{
  const std::string grid = fixtures::corpus_path("grid4x4.msh");
  SUBCASE("no fields means identical traffic")
  {
    const json j = parse_ok(run_cli({"bench", grid, "--nparts", "4", "--fields", "0"}));
    check_schema(j, "bench.schema.json");
    CHECK(j["reports"][0]["migration"] == j["reports"][1]["migration"]);
  }
  SUBCASE("fields travel only in the preprocessor path")
  {
    const json j = parse_ok(run_cli({"bench", grid, "--nparts", "4", "--fields", "3"}));
    check_schema(j, "bench.schema.json");
    const json& pre = j["reports"][0]["migration"];
    const json& rt = j["reports"][1]["migration"];
    CHECK(j["reports"][0]["workflow"] == "preprocessor");
    CHECK(pre["bytes_fields"] > 0);
    CHECK(rt["bytes_fields"] == 0);
    CHECK(pre["bytes_topology"] == rt["bytes_topology"]);
    CHECK(pre["bytes_total"] > rt["bytes_total"]);
  }
}

TEST_CASE("output is deterministic apart from timings")
{
  const std::string grid = fixtures::corpus_path("grid32x32.msh");
  fixtures::TempDir a, b;
  for (const auto& method : {"greedy-bfs", "coordinate-bisection"})
  {
    const auto r1 = run_cli({"bench", grid, "--nparts", "4", "--fields", "2", "--method", method});
    const auto r2 = run_cli({"bench", grid, "--nparts", "4", "--fields", "2", "--method", method});
    CHECK(fixtures::without_timing(json::parse(r1.out)).dump()
          == fixtures::without_timing(json::parse(r2.out)).dump());
    CHECK(run_cli({"distribute", grid, "--nparts", "4", "--method", method, "--out", a / "d"}).out
          == run_cli({"distribute", grid, "--nparts", "4", "--method", method, "--out", b / "d"})
                 .out);
    CHECK(slurp(a / "d/sf.json") == slurp(b / "d/sf.json"));
    CHECK(slurp(a / "d/rank2.msh") == slurp(b / "d/rank2.msh"));
  }
}
