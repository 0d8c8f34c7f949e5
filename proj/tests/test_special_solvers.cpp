#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "platmatch/errors.hpp"
#include "platmatch/exact_solver.hpp"
#include "platmatch/instance_lab.hpp"
#include "platmatch/special_solvers.hpp"

using namespace platmatch;

namespace {

Market unit_triangle() {
  // Sellers as triangle vertices; each buyer knows two of them.
  Market m = make_market(3, 3);
  for (int b = 0; b < 3; ++b)
    for (int s = 0; s < 3; ++s) m.values[b][s] = 1;
  m.world_edges = {{0, 0}, {0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 2}};
  m.validate();
  return m;
}

}  // namespace

TEST_CASE("market classification") {
  CHECK(classify_market(gen_swsh_example()) == MarketClass::Swsh);
  CHECK(classify_market(gen_fig1(3)) == MarketClass::General);
  CHECK(classify_market(unit_triangle()) == MarketClass::Shgb);
  Market hom = make_market(2, 2);
  hom.values = {{Rational(3), Rational(3)}, {Rational(1), Rational(1)}};
  hom.world_edges = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  CHECK(classify_market(hom) == MarketClass::Homogeneous);
  CHECK(market_class_name(MarketClass::Shgb) == "shgb");
}

TEST_CASE("swsh decomposition of the worked example") {
  SubgraphDecomposition dec = decompose_swsh(gen_swsh_example());
  REQUIRE(dec.seller_subgraphs.size() == 3);
  CHECK(dec.seller_subgraphs[0].seller == 0);
  CHECK(dec.seller_subgraphs[0].value == Rational(10));
  CHECK(dec.seller_subgraphs[1].seller == 1);
  CHECK(dec.seller_subgraphs[1].buyers == std::vector<int>{1, 2});
  CHECK(dec.seller_subgraphs[2].seller == 2);
  CHECK(dec.seller_subgraphs[2].value == Rational(1));
  CHECK(dec.dangling_buyers.empty());
  CHECK(dec.dangling_sellers == std::vector<int>{3});
}

TEST_CASE("swsh solves the worked example") {
  SolveReport report = swsh_solve(gen_swsh_example());
  CHECK(report.revenue == Rational(22));
  CHECK(report.equilibrium.prices == std::vector<Rational>{9, 9, 3, 1});
  CHECK(report.certified_optimal);
  CHECK(report.solver_name == "swsh");
  CHECK(verify_equilibrium(gen_swsh_example(), report.platform_edges,
                           report.equilibrium)
            .empty());
}

TEST_CASE("swsh single subgraph with a dangling seller") {
  // One buyer world-tied to s1, s2 dangling. A platform edge to s2 can
  // never bind (the world trade is a free alternative): revenue 0.
  Market m = make_market(1, 2);
  m.values[0] = {Rational(7), Rational(7)};
  m.world_edges = {{0, 0}};
  SolveReport report = swsh_solve(m);
  CHECK(report.revenue == optimal_revenue(m).revenue);
  CHECK(report.revenue == Rational(0));
}

TEST_CASE("swsh with only dangling agents sells the top values") {
  Market m = make_market(3, 2);
  m.values[0] = {Rational(5), Rational(5)};
  m.values[1] = {Rational(9), Rational(9)};
  m.values[2] = {Rational(2), Rational(2)};
  SolveReport report = swsh_solve(m);
  CHECK(report.revenue == Rational(14));  // 9 + 5
  CHECK(report.welfare == Rational(14));
}

TEST_CASE("swsh matches the oracle on random instances") {
  std::mt19937_64 seeder(424242);
  for (int iter = 0; iter < 80; ++iter) {
    Market m = random_swsh(static_cast<int>(seeder() % 5) + 1,
                           static_cast<int>(seeder() % 5) + 1, seeder());
    SolveReport fast = swsh_solve(m);
    SolveReport slow = optimal_revenue(m);
    CHECK(fast.revenue == slow.revenue);
    CHECK(verify_equilibrium(m, fast.platform_edges, fast.equilibrium)
              .empty());
  }
}

TEST_CASE("swsh rejects other classes") {
  CHECK_THROWS_AS(swsh_solve(gen_fig1(3)), ClassError);
  CHECK_THROWS_AS(swsh_solve(unit_triangle()), ClassError);
}

TEST_CASE("shgb solves the triangle correspondence") {
  SolveReport report = shgb_solve(unit_triangle());
  CHECK(report.revenue == Rational(3));
  CHECK(report.platform_edges.edges.size() == 3);
  CHECK(report.certified_optimal);
  CHECK(report.solver_name == "shgb");
}

TEST_CASE("shgb solves the path correspondence") {
  // Sellers x-y-z, buyers for edges xy and yz: the full buyer set has
  // positive surplus, so the exceptional brute force decides (revenue 0).
  Market m = make_market(2, 3);
  for (int b = 0; b < 2; ++b)
    for (int s = 0; s < 3; ++s) m.values[b][s] = 1;
  m.world_edges = {{0, 0}, {0, 1}, {1, 1}, {1, 2}};
  SolveReport report = shgb_solve(m);
  CHECK(report.revenue == optimal_revenue(m).revenue);
  CHECK(report.revenue == Rational(0));
}

TEST_CASE("shgb solves a single isolated buyer") {
  Market m = make_market(1, 1);
  m.values[0][0] = 1;
  SolveReport report = shgb_solve(m);
  CHECK(report.revenue == Rational(1));
}

TEST_CASE("shgb rescales a non-unit common value") {
  Market m = unit_triangle();
  for (auto& row : m.values)
    for (auto& v : row) v = Rational(3, 2);
  SolveReport report = shgb_solve(m);
  CHECK(report.revenue == Rational(9, 2));
}

TEST_CASE("shgb matches the oracle on random instances") {
  std::mt19937_64 seeder(98765);
  for (int iter = 0; iter < 80; ++iter) {
    int buyers = static_cast<int>(seeder() % 7) + 2;
    int sellers = static_cast<int>(seeder() % 4) + 2;
    Market m = random_shgb(buyers, sellers, seeder());
    SolveReport fast = shgb_solve(m);
    SolveReport slow = optimal_revenue(m);
    CHECK(fast.revenue == slow.revenue);
    CHECK(verify_equilibrium(m, fast.platform_edges, fast.equilibrium)
              .empty());
  }
}

TEST_CASE("shgb accepts swsh-classified unit markets but rejects others") {
  // All buyers degree <= 1 with a single common value: classified SWSH,
  // still valid SHGB input.
  Market m = make_market(2, 2);
  m.values = {{Rational(1), Rational(1)}, {Rational(1), Rational(1)}};
  m.world_edges = {{0, 0}};
  CHECK(classify_market(m) == MarketClass::Swsh);
  CHECK(shgb_solve(m).revenue == swsh_solve(m).revenue);
  CHECK_THROWS_AS(shgb_solve(gen_fig1(3)), ClassError);
  CHECK_THROWS_AS(shgb_solve(gen_swsh_example()), ClassError);
}

TEST_CASE("solver dispatch picks the right engine") {
  CHECK(solve_auto(gen_swsh_example()).solver_name == "swsh");
  CHECK(solve_auto(unit_triangle()).solver_name == "shgb");
  SolveReport exact = solve_auto(gen_fig1(3));
  CHECK(exact.solver_name == "exact");
  CHECK(exact.certified_optimal);

  // Beyond the exact limits, dispatch falls back to greedy, uncertified.
  ExactLimits tiny;
  tiny.max_buyers = 2;
  tiny.max_sellers = 2;
  SolveReport fallback = solve_auto(gen_fig1(3), tiny);
  CHECK(fallback.solver_name == "greedy");
  CHECK(!fallback.certified_optimal);
}
