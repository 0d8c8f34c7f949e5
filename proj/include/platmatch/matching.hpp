#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "platmatch/market.hpp"
#include "platmatch/rational.hpp"

namespace platmatch {

// Weighted bipartite graph over [0,left_count) x [0,right_count). Edges
// are explicit: a zero-weight edge is a feasible pairing worth nothing,
// which is different from no edge at all.
struct WeightedBipartiteGraph {
  int left_count = 0;
  int right_count = 0;
  EdgeList edges;                  // sorted, unique
  std::vector<Rational> weights;   // parallel to edges, each >= 0

  void add_edge(int l, int r, Rational w);
  // Sorts edges (with their weights) and checks invariants.
  void normalize();
};

// Weight of a maximum-weight matching (0 for the empty graph).
Rational max_weight_value(const WeightedBipartiteGraph& g);

// As above with the vertices in `banned_right` removed. Used for the
// price queries W(G \ {s_j}).
Rational max_weight_value_without_right(const WeightedBipartiteGraph& g,
                                        int banned_right);

// The lexicographically smallest maximum-weight matching: among all
// matchings of maximum total weight, the one whose sorted edge list
// compares smallest. Deterministic. Returns the matching and its weight.
std::pair<EdgeList, Rational> max_weight_matching(
    const WeightedBipartiteGraph& g);

// Two-level objective: among maximum-weight matchings, maximize the total
// of `bonus` (parallel to g.edges, each >= 0); ties broken
// lexicographically as above. Returns the matching and its bonus total.
std::pair<EdgeList, Rational> max_weight_matching_favoring(
    const WeightedBipartiteGraph& g, const std::vector<Rational>& bonus);

// Best achievable bonus total among maximum-weight matchings, without
// reconstructing a witness matching. Cheaper than the full version.
Rational max_bonus_over_max_weight(const WeightedBipartiteGraph& g,
                                   const std::vector<Rational>& bonus);

// All maximum-weight matchings, each as a sorted edge list, the whole
// collection sorted lexicographically. Throws CapacityError when more
// than `cap` matchings exist.
std::vector<EdgeList> enumerate_max_weight_matchings(
    const WeightedBipartiteGraph& g, std::size_t cap);

// Unweighted graph as adjacency lists from left vertices.
struct BipartiteGraph {
  int left_count = 0;
  int right_count = 0;
  std::vector<std::vector<int>> adj;  // adj[l] = sorted right neighbours
};

// Witness for a Hall-condition violation on the left side.
struct HallCertificate {
  std::vector<int> violator;      // left vertices, sorted
  std::vector<int> neighborhood;  // union of their neighbours, sorted
  int difference = 0;             // |violator| - |neighborhood|, >= 1
};

// A maximum-cardinality matching as right-match per left vertex (-1 if
// unmatched). Deterministic (augments left vertices in index order).
std::vector<int> max_cardinality_matching(const BipartiteGraph& g);

// left_count minus the size of a maximum matching. By Koenig's theorem
// this equals max over left subsets X of |X| - |N(X)| (floored at 0).
int deficiency(const BipartiteGraph& g);

// The left set achieving the maximum of |X| - |N(X)|: all left vertices
// reachable by alternating paths from unmatched left vertices. None when
// deficiency is 0.
std::optional<HallCertificate> max_difference_hall_violator(
    const BipartiteGraph& g);

// A Hall violator containing `left_vertex`, or none. Reduction: X = {b}
// u X' violates Hall iff X' has |X'| - |N(X')| >= |N(b)| in the graph
// with b and N(b) deleted.
std::optional<HallCertificate> vertex_hall_violator(const BipartiteGraph& g,
                                                    int left_vertex);

}  // namespace platmatch
