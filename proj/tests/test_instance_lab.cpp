#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "platmatch/errors.hpp"
#include "platmatch/exact_solver.hpp"
#include "platmatch/instance_lab.hpp"
#include "platmatch/json_io.hpp"

using namespace platmatch;

TEST_CASE("chain market shape") {
  Market m = gen_fig1(4);
  CHECK(m.buyer_count() == 4);
  CHECK(m.seller_count() == 4);
  CHECK(m.world_edges.empty());
  CHECK(m.value(0, 0) == Rational(1));
  CHECK(m.value(2, 1) == Rational(3));
  CHECK(m.value(2, 2) == Rational(3));
  CHECK(m.value(2, 0) == Rational(0));
  CHECK_THROWS_AS(gen_fig1(0), InstanceError);
}

TEST_CASE("harmonic market shape") {
  Market m = gen_fig3(3);
  CHECK(m.buyer_count() == 6);
  CHECK(m.seller_count() == 6);
  CHECK(m.value(1, 0) == Rational(1, 2));   // b2 values real sellers at 1/2
  CHECK(m.value(1, 4) == Rational(0));      // but not the dummy sellers
  CHECK(m.value(3, 0) == Rational(1));      // dummies value everything at 1
  CHECK(m.value(3, 5) == Rational(1));
  // World edges: every buyer to every real seller.
  CHECK(m.world_edges.size() == 6u * 3u);
  CHECK_THROWS_AS(gen_fig3(0), InstanceError);
}

TEST_CASE("gap market shape and eps validation") {
  Market m = gen_fig4(Rational(1, 4));
  CHECK(m.value(1, 1) == Rational(1, 4));
  CHECK(m.world_edges == EdgeList{{1, 0}});
  CHECK_THROWS_AS(gen_fig4(Rational(0)), InstanceError);
  CHECK_THROWS_AS(gen_fig4(Rational(1)), InstanceError);
}

TEST_CASE("monopoly example shape") {
  Market m = gen_mono_example(Rational(1, 2));
  CHECK(m.buyer_count() == 2);
  CHECK(m.seller_count() == 1);
  CHECK(m.value(1, 0) == Rational(3, 2));
  CHECK(m.world_edges == EdgeList{{0, 0}});
}

TEST_CASE("sat reduction on the trivial formula") {
  // One variable, no clauses: q = 1 padding clause, t = 1, Z = 1, H = 2,
  // D = 1*1 + 0 + 2*(2*1*1 - 1) = 3.
  Cnf cnf;
  cnf.variable_count = 1;
  ReductionBundle bundle = gen_sat_reduction(cnf);
  CHECK(bundle.provenance["t"] == 1);
  CHECK(bundle.provenance["Z"].get<std::string>() == "1");
  CHECK(bundle.threshold == Rational(3));
  // Satisfiable, so the threshold is reachable.
  CHECK(optimal_revenue(bundle.market).revenue >= bundle.threshold);
}

TEST_CASE("sat reduction requires balanced occurrences") {
  Cnf cnf;
  cnf.variable_count = 1;
  cnf.clauses = {{1, 1, 1}};  // x appears positively only
  CHECK_THROWS_AS(gen_sat_reduction(cnf), InstanceError);
}

TEST_CASE("sat reduction rejects an undersized h") {
  Cnf cnf;
  cnf.variable_count = 1;
  CHECK_THROWS_AS(gen_sat_reduction(cnf, Rational(1)), InstanceError);
}

TEST_CASE("vertex cover reduction on the triangle") {
  std::vector<std::pair<int, int>> k3{{0, 1}, {0, 2}, {1, 2}};
  ReductionBundle bundle = gen_vc_reduction(3, k3, 2);
  // q = 2, threshold = 2*3 + (2+1)*3 - 2 = 13.
  CHECK(bundle.threshold == Rational(13));
  CHECK(bundle.provenance["min_cover_size"] == 2);
  // The proof configuration realizes the threshold exactly.
  SolveReport proof =
      report_for_edges(bundle.market, bundle.proof_edges, "proof", false);
  CHECK(proof.revenue == Rational(13));
}

TEST_CASE("vertex cover reduction rejects h below 2") {
  CHECK_THROWS_AS(gen_vc_reduction(2, {{0, 1}}, Rational(1)), InstanceError);
}

TEST_CASE("random families are deterministic per seed") {
  for (const char* family :
       {"random_general", "random_homogeneous", "random_swsh"}) {
    GenSpec spec{family, {{"n", "4"}, {"m", "3"}, {"seed", "11"}}};
    CHECK(market_to_json(gen_random(spec)) == market_to_json(gen_random(spec)));
  }
  GenSpec spec{"random_shgb", {{"buyers", "5"}, {"seed", "11"}}};
  CHECK(market_to_json(gen_random(spec)) == market_to_json(gen_random(spec)));
  GenSpec other{"random_shgb", {{"buyers", "5"}, {"seed", "12"}}};
  CHECK(market_to_json(gen_random(spec)) != market_to_json(gen_random(other)));
}

TEST_CASE("random families respect their structural promises") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Market hom = random_homogeneous(4, 4, seed);
    CHECK(is_homogeneous(hom));
    Market swsh = random_swsh(4, 4, seed);
    CHECK(is_homogeneous(swsh));
    std::vector<int> deg(swsh.buyer_count(), 0);
    for (const Edge& e : swsh.world_edges) ++deg[e.first];
    for (int d : deg) CHECK(d <= 1);

    Market shgb = random_shgb(6, 4, seed);
    const Rational c = shgb.value(0, 0);
    CHECK(c > 0);
    for (int b = 0; b < shgb.buyer_count(); ++b)
      for (int s = 0; s < shgb.seller_count(); ++s)
        CHECK(shgb.value(b, s) == c);
    std::vector<int> deg2(shgb.buyer_count(), 0);
    for (const Edge& e : shgb.world_edges) ++deg2[e.first];
    for (int d : deg2) CHECK(d <= 2);
  }
}

TEST_CASE("generator dispatch validates family and parameters") {
  CHECK_THROWS_AS(gen_random(GenSpec{"nope", {}}), InstanceError);
  CHECK_THROWS_AS(gen_random(GenSpec{"fig1", {}}), InstanceError);
  CHECK_THROWS_AS(gen_random(GenSpec{"fig1", {{"n", "x"}}}), InstanceError);
  CHECK_THROWS_AS(gen_random(GenSpec{"fig4", {{"eps", "3"}}}), InstanceError);
}

TEST_CASE("reduction bundles serialize") {
  ReductionBundle bundle = gen_vc_reduction(3, {{0, 1}, {0, 2}, {1, 2}}, 2);
  auto j = bundle_to_json(bundle);
  CHECK(j.contains("market"));
  CHECK(j.contains("threshold"));
  CHECK(j.contains("provenance"));
  CHECK(j.contains("proof_edges"));
  CHECK(j["threshold"].get<std::string>() == "13");
}
