#pragma once

// Shared brute-force oracles and corpus helpers for the test binaries.
// The brute forces are deliberately independent of the library's search
// strategies: they enumerate subsets/matchings directly so that library
// results can be checked against first principles.

#include <algorithm>
#include <optional>
#include <vector>

#include "platmatch/market.hpp"
#include "platmatch/market_ops.hpp"
#include "platmatch/matching.hpp"

namespace testutil {

using namespace platmatch;

// All matchings (including the empty one) of a bipartite edge list.
inline void all_matchings_rec(const EdgeList& edges, std::size_t i,
                              EdgeList& current, std::vector<EdgeList>& out) {
  if (i == edges.size()) {
    out.push_back(current);
    return;
  }
  all_matchings_rec(edges, i + 1, current, out);
  const Edge& e = edges[i];
  for (const Edge& c : current)
    if (c.first == e.first || c.second == e.second) return;
  current.push_back(e);
  all_matchings_rec(edges, i + 1, current, out);
  current.pop_back();
}

inline std::vector<EdgeList> all_matchings(const EdgeList& edges) {
  std::vector<EdgeList> out;
  EdgeList current;
  all_matchings_rec(edges, 0, current, out);
  return out;
}

// Max-weight matching value by full enumeration.
inline Rational brute_max_weight(const WeightedBipartiteGraph& g) {
  Rational best = 0;
  for (const EdgeList& m : all_matchings(g.edges)) {
    Rational w = 0;
    for (const Edge& e : m) {
      auto it = std::lower_bound(g.edges.begin(), g.edges.end(), e);
      w += g.weights[it - g.edges.begin()];
    }
    best = std::max(best, w);
  }
  return best;
}

// Best platform revenue over ALL subsets of non-world pairs (not just
// matchings), each priced with the revenue-favoring equilibrium. The
// ground-truth oracle for the exact solver's candidate restriction.
inline Rational brute_optimal_revenue(const Market& market) {
  EdgeList pairs;
  for (int b = 0; b < market.buyer_count(); ++b)
    for (int s = 0; s < market.seller_count(); ++s)
      if (!market.has_world_edge(b, s)) pairs.emplace_back(b, s);
  Rational best = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
    PlatformEdgeSet set;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) set.edges.push_back(pairs[i]);
    Equilibrium eq = revenue_favoring_equilibrium(market, set);
    best = std::max(best, platform_revenue(market, set, eq));
  }
  return best;
}

inline Rational harmonic(int k) {
  Rational h = 0;
  for (int i = 1; i <= k; ++i) h += Rational(1, i);
  return h;
}

}  // namespace testutil
