#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "platmatch/rational.hpp"

namespace platmatch {

// (buyer index, seller index) pair; all edge lists are kept sorted and
// duplicate free so outputs are deterministic.
using Edge = std::pair<int, int>;
using EdgeList = std::vector<Edge>;

// A bipartite buyer/seller market. Buyers and sellers are referred to by
// index everywhere in the library; ids only matter for serialization.
// Invariants (enforced by validate()): ids unique and non-empty, all
// valuations finite non-negative rationals, world edges sorted, unique and
// in range. A pair with valuation zero may still carry an edge; an edge is
// a trading opportunity, the valuation is just its surplus.
struct Market {
  std::vector<std::string> buyers;
  std::vector<std::string> sellers;
  // Dense n x m matrix; absent valuations are zero.
  std::vector<std::vector<Rational>> values;
  EdgeList world_edges;

  int buyer_count() const { return static_cast<int>(buyers.size()); }
  int seller_count() const { return static_cast<int>(sellers.size()); }
  const Rational& value(int b, int s) const { return values[b][s]; }
  bool has_world_edge(int b, int s) const;

  // Index of the named buyer/seller, or -1.
  int buyer_index(const std::string& id) const;
  int seller_index(const std::string& id) const;

  // Throws InstanceError if any invariant fails.
  void validate() const;
};

// Convenience constructor: sizes the value matrix and names agents
// "b1..bn" / "s1..sm".
Market make_market(int buyer_count, int seller_count);

// Platform-owned edges, disjoint from the world edges of the market they
// are used with (checked wherever the two meet).
struct PlatformEdgeSet {
  EdgeList edges;
};

// A priced outcome: an allocation (matching, sorted) plus one price per
// seller (unsold sellers have price zero).
struct Equilibrium {
  EdgeList allocation;
  std::vector<Rational> prices;
};

// Result of running a solver on a market.
struct SolveReport {
  PlatformEdgeSet platform_edges;
  Equilibrium equilibrium;
  Rational welfare;          // of the world + platform graph
  Rational revenue;          // sum of prices over transacting platform edges
  Rational optimal_welfare;  // W*: welfare of the complete trade graph
  bool certified_optimal = false;
  std::string solver_name;
};

// Sorts, checks ranges against the market and rejects duplicates and
// overlap with world edges. Throws InstanceError.
void validate_platform_edges(const Market& market, const PlatformEdgeSet& set);

// True if `edges` is a matching (no endpoint repeated).
bool is_matching(const EdgeList& edges);

}  // namespace platmatch
