#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "platmatch/approx_solvers.hpp"
#include "platmatch/errors.hpp"
#include "platmatch/exact_solver.hpp"
#include "platmatch/instance_lab.hpp"

using namespace platmatch;
using testutil::harmonic;

TEST_CASE("welfare-maximizing edges reach W* with non-world pairs only") {
  std::mt19937_64 seeder(314);
  for (int iter = 0; iter < 40; ++iter) {
    Market m = random_general(static_cast<int>(seeder() % 6) + 1,
                              static_cast<int>(seeder() % 6) + 1, seeder());
    PlatformEdgeSet edges = welfare_maximizing_edges(m);
    CHECK(social_welfare(m, edges) == optimal_welfare(m));
    for (const Edge& e : edges.edges) CHECK(!m.has_world_edge(e.first, e.second));
  }
}

TEST_CASE("harmonic market conversion values") {
  Market m2 = gen_fig3(2);
  PlatformEdgeSet cand = welfare_maximizing_edges(m2);
  // The two dummy buyers take the two dummy sellers.
  CHECK(cand.edges == EdgeList{{2, 2}, {3, 3}});
  ConversionReport report = greedy_conversion(m2, cand);
  CHECK(report.input_delta_w == Rational(3, 2));
  CHECK(report.harmonic_k == 2);
  CHECK(report.guarantee == Rational(3, 2) / harmonic(2));
  CHECK(report.revenue == Rational(1));

  ConversionReport r4 = greedy_conversion(gen_fig3(4),
                                          welfare_maximizing_edges(gen_fig3(4)));
  CHECK(r4.input_delta_w == Rational(25, 12));
  CHECK(r4.revenue == Rational(1));
  CHECK(r4.guarantee == Rational(1));  // delta W = H_4 exactly
}

TEST_CASE("greedy conversion meets its harmonic guarantee") {
  std::mt19937_64 seeder(2718);
  for (int iter = 0; iter < 50; ++iter) {
    Market m = random_general(static_cast<int>(seeder() % 6) + 1,
                              static_cast<int>(seeder() % 6) + 1, seeder());
    ConversionReport report =
        greedy_conversion(m, welfare_maximizing_edges(m));
    CHECK(report.revenue >= report.guarantee);
    // Chosen subset must really earn the reported revenue.
    Equilibrium eq = revenue_favoring_equilibrium(m, report.chosen_subset);
    CHECK(platform_revenue(m, report.chosen_subset, eq) == report.revenue);
  }
}

TEST_CASE("greedy conversion of an empty candidate set") {
  ConversionReport report = greedy_conversion(gen_fig1(2), PlatformEdgeSet{});
  CHECK(report.harmonic_k == 0);
  CHECK(report.revenue == Rational(0));
  CHECK(report.guarantee == Rational(0));
}

TEST_CASE("homogeneous full conversion hits W* and the revenue bound") {
  // Homogeneous variant of the harmonic market with k = 2: every buyer
  // values every seller.
  Market m = make_market(4, 4);
  for (int s = 0; s < 4; ++s) {
    m.values[0][s] = 1;
    m.values[1][s] = Rational(1, 2);
    m.values[2][s] = 1;
    m.values[3][s] = 1;
  }
  for (int b = 0; b < 4; ++b)
    for (int s = 0; s < 2; ++s) m.world_edges.emplace_back(b, s);
  m.validate();
  SolveReport report = hom_full_conversion(m);
  CHECK(report.welfare == Rational(7, 2));
  CHECK(report.optimal_welfare == Rational(7, 2));
  CHECK(report.revenue == Rational(3, 2));
  CHECK(!report.certified_optimal);
}

TEST_CASE("homogeneous full conversion guarantees on random markets") {
  std::mt19937_64 seeder(112358);
  for (int iter = 0; iter < 50; ++iter) {
    Market m = random_homogeneous(static_cast<int>(seeder() % 6) + 1,
                                  static_cast<int>(seeder() % 6) + 1,
                                  seeder());
    SolveReport report = hom_full_conversion(m);
    CHECK(report.welfare == report.optimal_welfare);
    Rational world_welfare = social_welfare(m, PlatformEdgeSet{});
    CHECK(report.revenue >= report.optimal_welfare - world_welfare);
  }
  CHECK_THROWS_AS(hom_full_conversion(gen_fig1(3)), ClassError);
}

TEST_CASE("monopoly pair price") {
  Market m = gen_mono_example(Rational(1, 2));
  auto result = max_pair_price(m, 1, 0);
  REQUIRE(result);
  CHECK(result->first == Rational(3, 2));
  SolveReport realized = report_for_edges(m, result->second, "pair", false);
  CHECK(realized.revenue >= Rational(3, 2));
}

TEST_CASE("pair price rejects bad queries") {
  Market m = gen_mono_example(Rational(1, 2));
  CHECK_THROWS_AS(max_pair_price(m, 0, 0), InstanceError);  // world pair
  CHECK_THROWS_AS(max_pair_price(m, 0, 1), InstanceError);  // out of range
  CHECK_THROWS_AS(max_pair_price(gen_fig1(3), 0, 1), ClassError);
}

TEST_CASE("pair price of an uncontested buyer is its value") {
  // No world edges at all: any admissible pair prices at the buyer value.
  Market m = make_market(2, 2);
  m.values[0] = {Rational(5), Rational(5)};
  m.values[1] = {Rational(2), Rational(2)};
  auto result = max_pair_price(m, 0, 1);
  REQUIRE(result);
  CHECK(result->first == Rational(5));
}

TEST_CASE("pair price returns none when only price zero is achievable") {
  // One buyer, two sellers, world edge to s1: selling s2 to the buyer
  // can only happen at price 0 (the world trade is a free alternative).
  Market m = make_market(1, 2);
  m.values[0] = {Rational(4), Rational(4)};
  m.world_edges = {{0, 0}};
  CHECK(!max_pair_price(m, 0, 1));
}

TEST_CASE("single-pair approximation is a min(n,m) approximation") {
  std::mt19937_64 seeder(173);
  for (int iter = 0; iter < 40; ++iter) {
    Market m = random_homogeneous(static_cast<int>(seeder() % 5) + 1,
                                  static_cast<int>(seeder() % 5) + 1,
                                  seeder());
    SolveReport approx = min_nm_approx(m);
    SolveReport exact = optimal_revenue(m);
    int nm = std::min(m.buyer_count(), m.seller_count());
    CHECK(approx.revenue * nm >= exact.revenue);
    CHECK(approx.revenue <= exact.revenue);
  }
}
