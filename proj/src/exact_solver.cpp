#include "platmatch/exact_solver.hpp"

#include <algorithm>
#include <functional>

#include "platmatch/errors.hpp"
#include "platmatch/matching.hpp"

namespace platmatch {

namespace {

struct SearchResult {
  Rational best_revenue{0};
  EdgeList best_witness;         // (size, lex)-smallest optimal set
  Rational worst_welfare{0};     // min welfare among optimal sets
  EdgeList worst_witness;
};

// Candidate pairs: non-world, positive value (a zero-value platform edge
// can never earn: its buyer would trade at negative utility otherwise).
std::vector<std::vector<int>> candidate_pairs(const Market& market) {
  std::vector<std::vector<int>> per_buyer(market.buyer_count());
  for (int b = 0; b < market.buyer_count(); ++b) {
    for (int s = 0; s < market.seller_count(); ++s) {
      if (!market.has_world_edge(b, s) && market.value(b, s) > 0) {
        per_buyer[b].push_back(s);
      }
    }
  }
  return per_buyer;
}

bool witness_less(const EdgeList& a, const EdgeList& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

SearchResult search(const Market& market, const ExactLimits& limits) {
  market.validate();
  if (market.buyer_count() > limits.max_buyers ||
      market.seller_count() > limits.max_sellers) {
    throw CapacityError("market exceeds exact-solver size limits");
  }
  auto per_buyer = candidate_pairs(market);
  int n = market.buyer_count();

  // Count candidate sets (cheap, no pricing) so the capacity check does
  // not depend on search-time pruning.
  std::size_t count = 0;
  {
    std::vector<char> used_s(market.seller_count(), 0);
    std::function<void(int)> count_dfs = [&](int b) {
      if (count > limits.matching_enumeration_cap) return;
      if (b == n) {
        ++count;
        return;
      }
      count_dfs(b + 1);
      for (int s : per_buyer[b]) {
        if (used_s[s]) continue;
        used_s[s] = 1;
        count_dfs(b + 1);
        used_s[s] = 0;
      }
    };
    count_dfs(0);
    if (count > limits.matching_enumeration_cap)
      throw CapacityError("candidate edge-set enumeration cap exceeded");
  }

  WeightedBipartiteGraph base;
  base.left_count = n;
  base.right_count = market.seller_count();
  for (const Edge& e : market.world_edges) {
    base.add_edge(e.first, e.second, market.value(e.first, e.second));
  }
  base.normalize();

  // Optimistic revenue bound for pruning: each platform trade pays at
  // most the buyer's value for it.
  std::vector<Rational> suffix_value(n + 1, Rational(0));
  for (int b = n - 1; b >= 0; --b) {
    Rational best(0);
    for (int s : per_buyer[b]) {
      if (market.value(b, s) > best) best = market.value(b, s);
    }
    suffix_value[b] = suffix_value[b + 1] + best;
  }

  SearchResult result;
  bool have_any = false;

  auto evaluate = [&](const EdgeList& cand) {
    WeightedBipartiteGraph g = base;
    for (const Edge& e : cand) {
      g.add_edge(e.first, e.second, market.value(e.first, e.second));
    }
    g.normalize();
    Rational welfare = max_weight_value(g);
    Rational price_sum(0);
    std::vector<Rational> price(market.seller_count(), Rational(0));
    for (const Edge& e : cand) {
      price[e.second] = welfare - max_weight_value_without_right(g, e.second);
      price_sum += price[e.second];
    }
    Rational revenue(0);
    if (have_any && price_sum < result.best_revenue) {
      return;  // cannot reach, let alone tie, the incumbent
    }
    if (price_sum > 0) {
      std::vector<Rational> bonus(g.edges.size(), Rational(0));
      for (std::size_t k = 0; k < g.edges.size(); ++k) {
        if (std::binary_search(cand.begin(), cand.end(), g.edges[k]) &&
            !market.has_world_edge(g.edges[k].first, g.edges[k].second)) {
          bonus[k] = price[g.edges[k].second];
        }
      }
      revenue = max_bonus_over_max_weight(g, bonus);
    }
    if (!have_any || revenue > result.best_revenue) {
      have_any = true;
      result.best_revenue = revenue;
      result.best_witness = cand;
      result.worst_welfare = welfare;
      result.worst_witness = cand;
      return;
    }
    if (revenue == result.best_revenue) {
      if (witness_less(cand, result.best_witness)) result.best_witness = cand;
      if (welfare < result.worst_welfare ||
          (welfare == result.worst_welfare &&
           witness_less(cand, result.worst_witness))) {
        result.worst_welfare = welfare;
        result.worst_witness = cand;
      }
    }
  };

  EdgeList current;
  std::vector<char> used_s(market.seller_count(), 0);
  Rational current_value(0);
  std::function<void(int)> dfs = [&](int b) {
    if (have_any && current_value + suffix_value[b] < result.best_revenue)
      return;
    if (b == n) {
      evaluate(current);
      return;
    }
    dfs(b + 1);
    for (int s : per_buyer[b]) {
      if (used_s[s]) continue;
      used_s[s] = 1;
      current.push_back({b, s});
      current_value += market.value(b, s);
      dfs(b + 1);
      current_value -= market.value(b, s);
      current.pop_back();
      used_s[s] = 0;
    }
  };
  dfs(0);
  return result;
}

}  // namespace

SolveReport optimal_revenue(const Market& market, const ExactLimits& limits) {
  SearchResult result = search(market, limits);
  PlatformEdgeSet edges{result.best_witness};
  SolveReport report = report_for_edges(market, edges, "exact", true);
  return report;
}

PrmReport prm(const Market& market, const ExactLimits& limits) {
  SearchResult result = search(market, limits);
  PrmReport report;
  report.optimal_welfare = optimal_welfare(market);
  report.worst_revenue_optimal_welfare = result.worst_welfare;
  report.witness_edges.edges = result.worst_witness;
  if (report.worst_revenue_optimal_welfare == 0) {
    report.ratio = Rational(1);  // only possible when W* is 0 as well
  } else {
    report.ratio =
        report.optimal_welfare / report.worst_revenue_optimal_welfare;
  }
  return report;
}

}  // namespace platmatch
