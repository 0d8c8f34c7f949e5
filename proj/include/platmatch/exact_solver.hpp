#pragma once

#include "platmatch/market.hpp"
#include "platmatch/market_ops.hpp"

namespace platmatch {

// Size guards for the exhaustive solver.
struct ExactLimits {
  int max_buyers = 8;
  int max_sellers = 8;
  std::size_t matching_enumeration_cap = 100'000;
};

// Price-of-revenue-maximization summary: how much welfare the worst
// revenue-optimal platform configuration sacrifices.
struct PrmReport {
  Rational optimal_welfare;                 // W*
  Rational worst_revenue_optimal_welfare;   // min W over revenue-optimal sets
  Rational ratio;                           // W* / worst (1 when both are 0)
  PlatformEdgeSet witness_edges;            // a welfare-worst optimal set
};

// Ground-truth revenue maximization by exhaustive search. Candidate
// platform edge sets range over matchings of positive-value non-world
// pairs (removing a non-transacting, zero-price or zero-value platform
// edge never lowers revenue, so this loses nothing); each candidate is
// scored with the platform-favoring equilibrium tie-break. The witness is
// the (size, lexicographic) smallest among revenue-optimal sets, which
// makes it minimal: every reported edge transacts at a positive price.
SolveReport optimal_revenue(const Market& market, const ExactLimits& limits = {});

// Minimum welfare across all revenue-optimal candidate sets (welfare does
// not depend on the equilibrium chosen within a set: all max-weight
// matchings weigh the same).
PrmReport prm(const Market& market, const ExactLimits& limits = {});

}  // namespace platmatch
