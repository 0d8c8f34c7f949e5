#pragma once

#include <optional>

#include "platmatch/market.hpp"
#include "platmatch/market_ops.hpp"

namespace platmatch {

// Outcome of the harmonic welfare-to-revenue conversion.
struct ConversionReport {
  PlatformEdgeSet input_edges;
  Rational input_delta_w;      // welfare the candidates add over the world
  PlatformEdgeSet chosen_subset;
  Rational revenue;
  Rational guarantee;          // input_delta_w / H_k
  int harmonic_k = 0;          // k = |input_edges|
};

// A minimal platform edge set reaching the optimal welfare W*: the
// non-world edges of the lexicographically smallest max-weight matching
// of the complete (positive-value) graph.
PlatformEdgeSet welfare_maximizing_edges(const Market& market);

// Iteratively drops the candidate edge earning the least (lexicographic
// tie-break) and keeps the best-revenue prefix. Revenue is guaranteed to
// be at least delta_w / H_k.
ConversionReport greedy_conversion(const Market& market,
                                   const PlatformEdgeSet& candidates);

// The full greedy pipeline (candidates = welfare_maximizing_edges) as a
// SolveReport; never certified optimal.
SolveReport greedy_solve(const Market& market);

// Homogeneous-goods lossless conversion: platform edges that move every
// unmatched top buyer onto a displaced or unsold seller. Welfare equals
// W* and revenue is at least W* - W(G_w).
SolveReport hom_full_conversion(const Market& market);

// Maximum price at which seller `s` can sell to buyer `b` over all
// platform edge sets, with a realizing edge set; none when only price 0
// is achievable. Requires a homogeneous market, (b,s) not a world edge,
// and b among the top min(n,m) buyers by value.
std::optional<std::pair<Rational, PlatformEdgeSet>> max_pair_price(
    const Market& market, int b, int s);

// Best single-pair configuration over all admissible pairs: a
// min(n,m)-approximation of the optimal revenue on homogeneous markets.
SolveReport min_nm_approx(const Market& market);

}  // namespace platmatch
