#pragma once

#include <string>
#include <vector>

#include "platmatch/market.hpp"
#include "platmatch/matching.hpp"

namespace platmatch {

// Trade graph of the market: world edges plus the given platform edges,
// each weighted by the pair's valuation (platform edges are validated
// against the market first).
WeightedBipartiteGraph trade_graph(const Market& market,
                                   const PlatformEdgeSet& platform);

// Max-weight matching value of the trade graph.
Rational social_welfare(const Market& market, const PlatformEdgeSet& platform);

// Welfare if every pair could trade: max-weight matching value of the
// complete bipartite valuation graph (written W* throughout).
Rational optimal_welfare(const Market& market);

// Seller-optimal (maximum) competitive prices: p_j = W(G) - W(G minus
// s_j). One entry per seller; sellers whom some max-weight matching
// leaves unsold get 0 automatically.
std::vector<Rational> max_competitive_prices(const Market& market,
                                             const PlatformEdgeSet& platform);

// Pairs the allocation (must be a max-weight matching of the trade
// graph, else InstanceError) with the maximum competitive prices.
Equilibrium build_equilibrium(const Market& market,
                              const PlatformEdgeSet& platform,
                              const EdgeList& allocation);

// The lexicographically smallest max-weight matching of the trade graph,
// priced. Canonical deterministic outcome used by reports.
Equilibrium canonical_equilibrium(const Market& market,
                                  const PlatformEdgeSet& platform);

// Among max-weight matchings, one maximizing platform revenue under the
// given prices (the platform-favoring tie-break), lexicographic among
// those. Prices must be max_competitive_prices for the same edge set.
Equilibrium revenue_favoring_equilibrium(const Market& market,
                                         const PlatformEdgeSet& platform);

// Sum of prices over allocated platform trades.
Rational platform_revenue(const Market& market,
                          const PlatformEdgeSet& platform,
                          const Equilibrium& eq);

// A human-readable description of every violated equilibrium condition;
// empty means (allocation, prices) is a competitive equilibrium of the
// trade graph and the allocation has maximum weight.
std::vector<std::string> verify_equilibrium(const Market& market,
                                            const PlatformEdgeSet& platform,
                                            const Equilibrium& eq);

// True when every buyer values all sellers identically (v_ij = v_i).
bool is_homogeneous(const Market& market);

// The common per-buyer value of a homogeneous market (ClassError if not
// homogeneous).
std::vector<Rational> homogeneous_values(const Market& market);

// Buyers reachable from `buyer` by alternating non-transacting /
// transacting edges of the trade graph, including `buyer` itself.
// `allocation` must be a max-weight matching of the trade graph.
std::vector<int> opportunity_reachable(const Market& market,
                                       const PlatformEdgeSet& platform,
                                       const EdgeList& allocation, int buyer);

// Homogeneous-market price of the allocated trade (b,s) read off
// opportunity paths: the minimum value among reachable buyers, or 0 when
// some reachable buyer has an edge to an unsold seller.
Rational opportunity_price(const Market& market,
                           const PlatformEdgeSet& platform,
                           const EdgeList& allocation, const Edge& trade);

// Assembles a SolveReport for a concrete platform edge set using the
// revenue-favoring equilibrium.
SolveReport report_for_edges(const Market& market, PlatformEdgeSet platform,
                             const std::string& solver_name,
                             bool certified_optimal);

}  // namespace platmatch
