#pragma once

#include <cstdint>
#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "platmatch/market.hpp"

namespace platmatch {

// Named generator request: family tag plus string parameters (numbers or
// rationals). Random families require "seed".
struct GenSpec {
  std::string family;
  std::map<std::string, std::string> params;
};

// A hardness-reduction instance: the market, the closed-form
// revenue threshold, provenance describing the source formula/graph, and
// (for the vertex-cover reduction) the proof's witness configuration.
struct ReductionBundle {
  Market market;
  Rational threshold;
  nlohmann::json provenance;
  PlatformEdgeSet proof_edges;
};

// Chain market: n buyers/sellers, no world edges; buyer 1 values seller 1
// at 1, buyer i >= 2 values sellers i-1 and i at i.
Market gen_fig1(int n);

// Harmonic tightness market: buyers b_1..b_k (b_i values the k real
// sellers at 1/i) and k dummy buyers valuing every seller at 1, all world
// connected to the real sellers; k isolated dummy sellers.
Market gen_fig3(int k);

// Two-buyer/two-seller welfare-vs-revenue gap market (0 < eps < 1):
// v(b1,*) = 1, v(b2,s1) = 1, v(b2,s2) = eps, world edge (b2,s1).
Market gen_fig4(const Rational& eps);

// Monopolization example: one seller, world-connected buyer of value 1,
// isolated buyer of value 1+eps.
Market gen_mono_example(const Rational& eps);

// The worked 4x4 single-seller-subgraph market (values 10, 9, 3, 1).
Market gen_swsh_example();

// 3-CNF with literals as signed 1-based variable indices.
struct Cnf {
  int variable_count = 0;
  std::vector<std::vector<int>> clauses;
};

// SAT hardness construction. Requires each variable to appear positively
// and negatively equally often; pads with (x_i or not x_i) clauses so
// every variable occurs exactly 2t times. h must be >= Z+1 (default Z+1
// when unset, i.e. h = 0).
ReductionBundle gen_sat_reduction(const Cnf& cnf, const Rational& h = 0);

// Vertex-cover hardness construction over an undirected graph; h >= 2.
// The bundle's proof_edges realize the threshold revenue.
ReductionBundle gen_vc_reduction(int vertex_count,
                                 const std::vector<std::pair<int, int>>& edges,
                                 const Rational& h = 2);

// Seeded random families. Values are small rationals; each family
// satisfies its class tag by construction.
Market random_general(int n, int m, std::uint64_t seed);
Market random_homogeneous(int n, int m, std::uint64_t seed);
Market random_swsh(int n, int m, std::uint64_t seed);
Market random_shgb(int buyers, int sellers, std::uint64_t seed);

// Dispatch on GenSpec.family; unknown family or bad parameters raise
// InstanceError.
Market gen_random(const GenSpec& spec);

nlohmann::json bundle_to_json(const ReductionBundle& bundle);

}  // namespace platmatch
