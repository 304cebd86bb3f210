#include <doctest.h>
#include <fixtures.hpp>

#include <plexmesh/renumber.hpp>
#include <plexmesh/sparsity.hpp>

#include <sstream>

using namespace plexmesh;

namespace
{

std::size_t count_lines(const std::string& s)
{
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

} // namespace

TEST_CASE("P1 patterns")
{
  SUBCASE("single tetrahedron is dense")
  {
    const CsrPattern p = p1_pattern(raw_to_bundle(fixtures::single_simplex(3)));
    CHECK(p.num_rows() == 4);
    CHECK(p.nnz() == 16);
  }
  SUBCASE("two triangles leave the off-diagonal pair out")
  {
    const CsrPattern p = p1_pattern(raw_to_bundle(fixtures::two_triangles()));
    CHECK(p.nnz() == 14);
    CHECK_FALSE(p.contains(1, 2));
    CHECK_FALSE(p.contains(2, 1));
    CHECK(p.contains(0, 3));
  }
  SUBCASE("grids against the brute-force pair count")
  {
    for (int n : {4, 10})
    {
      const RawMesh m = fixtures::triangle_grid(n);
      CHECK(p1_pattern(raw_to_bundle(m)).nnz() == fixtures::brute_p1_nnz(m));
    }
    const RawMesh cube = fixtures::cube_tets(2);
    CHECK(p1_pattern(raw_to_bundle(cube)).nnz() == fixtures::brute_p1_nnz(cube));
  }
}

TEST_CASE("pattern invariants are enforced")
{
  CHECK_THROWS_AS(CsrPattern({{0, 1}, {1}}), ValidationError);
  CHECK_THROWS_AS(CsrPattern({{1}, {0}}), ValidationError);
  CHECK_THROWS_AS(CsrPattern({{0, 2}, {1}}), ValidationError);
  const CsrPattern p({{1, 0, 0}, {1, 0}});
  CHECK(p.nnz() == 4);
  CHECK(std::vector<std::int32_t>(p.row(0).begin(), p.row(0).end())
        == std::vector<std::int32_t>{0, 1});
}

TEST_CASE("bandwidth and profile")
{
  SUBCASE("diagonal")
  {
    const CsrPattern p({{0}, {1}, {2}});
    CHECK(bandwidth(p) == 0);
    CHECK(profile(p) == 0);
  }
  SUBCASE("path in order")
  {
    const CsrPattern p({{0, 1}, {0, 1, 2}, {1, 2, 3}, {2, 3}});
    CHECK(bandwidth(p) == 1);
    CHECK(profile(p) == 3);
  }
  SUBCASE("independent recount on random orderings")
  {
    const MeshBundle b = raw_to_bundle(fixtures::triangle_grid(6));
    for (std::uint32_t seed = 0; seed < 5; ++seed)
    {
      const auto perm = Permutation::from_forward(
          fixtures::random_permutation(b.plex.chart_size(), seed));
      const CsrPattern p = p1_pattern(apply_permutation(b, perm));
      CHECK(bandwidth(p) == fixtures::brute_bandwidth(p));
      std::int64_t prof = 0;
      for (std::int32_t i = 0; i < p.num_rows(); ++i)
        for (std::int32_t j = 0; j <= i; ++j)
          if (p.contains(i, j))
          {
            prof += i - j;
            break;
          }
      CHECK(profile(p) == prof);
    }
  }
}

TEST_CASE("renumbering consistency")
{
  for (const RawMesh& m : {fixtures::triangle_grid(4), fixtures::cube_tets(2)})
  {
    const MeshBundle b = raw_to_bundle(m);
    const CsrPattern base = p1_pattern(b);
    for (std::uint32_t seed = 0; seed < 10; ++seed)
    {
      const auto perm = Permutation::from_forward(
          fixtures::random_permutation(b.plex.chart_size(), seed));
      const CsrPattern moved = p1_pattern(apply_permutation(b, perm));
      CHECK(moved == permute_pattern(base, induced_vertex_permutation(b.plex, perm)));
      CHECK(moved.nnz() == base.nnz());
    }
  }
}

TEST_CASE("spy export")
{
  SUBCASE("2x2 dense")
  {
    std::ostringstream out;
    spy_export(out, CsrPattern({{0, 1}, {0, 1}}));
    CHECK(out.str() == "row,col\n0,0\n0,1\n1,0\n1,1\n");
  }
  SUBCASE("single tetrahedron")
  {
    std::ostringstream out;
    spy_export(out, p1_pattern(raw_to_bundle(fixtures::single_simplex(3))));
    CHECK(count_lines(out.str()) == 1 + 16);
  }
  SUBCASE("line count equals nnz on the corpus")
  {
    for (const auto& name : fixtures::corpus_names())
    {
      const CsrPattern p = p1_pattern(raw_to_bundle(fixtures::read_corpus(name)));
      std::ostringstream out;
      spy_export(out, p);
      CHECK(count_lines(out.str()) == static_cast<std::size_t>(p.nnz()) + 1);
    }
  }
}
