#include "platmatch/market_ops.hpp"

#include <algorithm>
#include <set>

#include "platmatch/errors.hpp"

namespace platmatch {

namespace {

// Bonus vector marking platform edges with their seller's price, so the
// two-level matching objective maximizes platform revenue.
std::vector<Rational> platform_price_bonus(const Market& market,
                                           const PlatformEdgeSet& platform,
                                           const WeightedBipartiteGraph& g,
                                           const std::vector<Rational>& prices) {
  std::set<Edge> platform_set(platform.edges.begin(), platform.edges.end());
  std::vector<Rational> bonus(g.edges.size(), Rational(0));
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    if (platform_set.count(g.edges[k])) bonus[k] = prices[g.edges[k].second];
  }
  return bonus;
}

}  // namespace

WeightedBipartiteGraph trade_graph(const Market& market,
                                   const PlatformEdgeSet& platform) {
  market.validate();
  validate_platform_edges(market, platform);
  WeightedBipartiteGraph g;
  g.left_count = market.buyer_count();
  g.right_count = market.seller_count();
  for (const Edge& e : market.world_edges) {
    g.add_edge(e.first, e.second, market.value(e.first, e.second));
  }
  for (const Edge& e : platform.edges) {
    g.add_edge(e.first, e.second, market.value(e.first, e.second));
  }
  g.normalize();
  return g;
}

Rational social_welfare(const Market& market,
                        const PlatformEdgeSet& platform) {
  return max_weight_value(trade_graph(market, platform));
}

Rational optimal_welfare(const Market& market) {
  market.validate();
  WeightedBipartiteGraph g;
  g.left_count = market.buyer_count();
  g.right_count = market.seller_count();
  for (int b = 0; b < market.buyer_count(); ++b) {
    for (int s = 0; s < market.seller_count(); ++s) {
      g.add_edge(b, s, market.value(b, s));
    }
  }
  g.normalize();
  return max_weight_value(g);
}

std::vector<Rational> max_competitive_prices(const Market& market,
                                             const PlatformEdgeSet& platform) {
  WeightedBipartiteGraph g = trade_graph(market, platform);
  Rational base = max_weight_value(g);
  std::vector<Rational> prices(market.seller_count(), Rational(0));
  std::vector<char> has_edge(market.seller_count(), 0);
  for (const Edge& e : g.edges) has_edge[e.second] = 1;
  for (int s = 0; s < market.seller_count(); ++s) {
    if (!has_edge[s]) continue;  // isolated sellers always price at 0
    prices[s] = base - max_weight_value_without_right(g, s);
  }
  return prices;
}

Equilibrium build_equilibrium(const Market& market,
                              const PlatformEdgeSet& platform,
                              const EdgeList& allocation) {
  WeightedBipartiteGraph g = trade_graph(market, platform);
  if (!is_matching(allocation))
    throw InstanceError("allocation is not a matching");
  Rational weight(0);
  for (const Edge& e : allocation) {
    auto it = std::lower_bound(g.edges.begin(), g.edges.end(), e);
    if (it == g.edges.end() || *it != e)
      throw InstanceError("allocation uses a pair with no edge");
    weight += g.weights[it - g.edges.begin()];
  }
  if (weight != max_weight_value(g))
    throw InstanceError("allocation is not a maximum-weight matching");
  Equilibrium eq;
  eq.allocation = allocation;
  std::sort(eq.allocation.begin(), eq.allocation.end());
  eq.prices = max_competitive_prices(market, platform);
  return eq;
}

Equilibrium canonical_equilibrium(const Market& market,
                                  const PlatformEdgeSet& platform) {
  WeightedBipartiteGraph g = trade_graph(market, platform);
  Equilibrium eq;
  eq.allocation = max_weight_matching(g).first;
  eq.prices = max_competitive_prices(market, platform);
  return eq;
}

Equilibrium revenue_favoring_equilibrium(const Market& market,
                                         const PlatformEdgeSet& platform) {
  WeightedBipartiteGraph g = trade_graph(market, platform);
  std::vector<Rational> prices = max_competitive_prices(market, platform);
  std::vector<Rational> bonus =
      platform_price_bonus(market, platform, g, prices);
  Equilibrium eq;
  eq.allocation = max_weight_matching_favoring(g, bonus).first;
  eq.prices = std::move(prices);
  return eq;
}

Rational platform_revenue(const Market& market,
                          const PlatformEdgeSet& platform,
                          const Equilibrium& eq) {
  std::set<Edge> platform_set(platform.edges.begin(), platform.edges.end());
  Rational total(0);
  for (const Edge& e : eq.allocation) {
    if (platform_set.count(e)) total += eq.prices[e.second];
  }
  return total;
}

std::vector<std::string> verify_equilibrium(const Market& market,
                                            const PlatformEdgeSet& platform,
                                            const Equilibrium& eq) {
  std::vector<std::string> violations;
  WeightedBipartiteGraph g = trade_graph(market, platform);

  if (!is_matching(eq.allocation)) {
    violations.push_back("allocation is not a matching");
    return violations;
  }
  if (static_cast<int>(eq.prices.size()) != market.seller_count()) {
    violations.push_back("price vector has wrong length");
    return violations;
  }

  std::vector<int> buyer_item(market.buyer_count(), -1);
  std::vector<int> seller_buyer(market.seller_count(), -1);
  Rational weight(0);
  for (const Edge& e : eq.allocation) {
    auto it = std::lower_bound(g.edges.begin(), g.edges.end(), e);
    if (it == g.edges.end() || *it != e) {
      violations.push_back("allocated pair (" + market.buyers[e.first] + "," +
                           market.sellers[e.second] + ") has no edge");
      continue;
    }
    buyer_item[e.first] = e.second;
    seller_buyer[e.second] = e.first;
    weight += g.weights[it - g.edges.begin()];
  }

  for (int s = 0; s < market.seller_count(); ++s) {
    if (eq.prices[s] < 0) {
      violations.push_back("negative price for " + market.sellers[s]);
    }
    if (seller_buyer[s] < 0 && eq.prices[s] != 0) {
      violations.push_back("unsold seller " + market.sellers[s] +
                           " has nonzero price");
    }
  }

  // Buyer optimality: allocated buyers need non-negative utility that is
  // maximal over their incident edges; unallocated buyers must see no
  // strictly positive utility anywhere.
  std::vector<std::vector<int>> incident(market.buyer_count());
  for (const Edge& e : g.edges) incident[e.first].push_back(e.second);
  for (int b = 0; b < market.buyer_count(); ++b) {
    Rational best(0);
    for (int s : incident[b]) {
      Rational u = market.value(b, s) - eq.prices[s];
      if (u > best) best = u;
    }
    if (buyer_item[b] >= 0) {
      Rational u = market.value(b, buyer_item[b]) - eq.prices[buyer_item[b]];
      if (u < 0)
        violations.push_back("buyer " + market.buyers[b] +
                             " trades at negative utility");
      if (u < best)
        violations.push_back("buyer " + market.buyers[b] +
                             " envies another affordable item");
    } else if (best > 0) {
      violations.push_back("unallocated buyer " + market.buyers[b] +
                           " has a strictly profitable trade");
    }
  }

  if (weight != max_weight_value(g)) {
    violations.push_back("allocation is not a maximum-weight matching");
  }
  return violations;
}

bool is_homogeneous(const Market& market) {
  for (int b = 0; b < market.buyer_count(); ++b) {
    for (int s = 1; s < market.seller_count(); ++s) {
      if (market.value(b, s) != market.value(b, 0)) return false;
    }
  }
  return true;
}

std::vector<Rational> homogeneous_values(const Market& market) {
  if (!is_homogeneous(market))
    throw ClassError("market is not homogeneous-goods");
  std::vector<Rational> v(market.buyer_count(), Rational(0));
  if (market.seller_count() > 0) {
    for (int b = 0; b < market.buyer_count(); ++b) v[b] = market.value(b, 0);
  }
  return v;
}

std::vector<int> opportunity_reachable(const Market& market,
                                       const PlatformEdgeSet& platform,
                                       const EdgeList& allocation, int buyer) {
  if (buyer < 0 || buyer >= market.buyer_count())
    throw InstanceError("opportunity_reachable: unknown buyer");
  WeightedBipartiteGraph g = trade_graph(market, platform);
  std::set<Edge> alloc(allocation.begin(), allocation.end());
  std::vector<int> seller_to_buyer(market.seller_count(), -1);
  for (const Edge& e : allocation) seller_to_buyer[e.second] = e.first;
  std::vector<std::vector<int>> incident(market.buyer_count());
  for (const Edge& e : g.edges) incident[e.first].push_back(e.second);

  std::vector<char> seen(market.buyer_count(), 0);
  std::vector<int> stack{buyer}, out;
  seen[buyer] = 1;
  while (!stack.empty()) {
    int b = stack.back();
    stack.pop_back();
    out.push_back(b);
    for (int s : incident[b]) {
      if (alloc.count({b, s})) continue;  // step must be non-transacting
      int b2 = seller_to_buyer[s];
      if (b2 >= 0 && !seen[b2]) {
        seen[b2] = 1;
        stack.push_back(b2);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational opportunity_price(const Market& market,
                           const PlatformEdgeSet& platform,
                           const EdgeList& allocation, const Edge& trade) {
  std::vector<Rational> values = homogeneous_values(market);
  if (std::find(allocation.begin(), allocation.end(), trade) ==
      allocation.end())
    throw InstanceError("opportunity_price: trade not in allocation");
  std::vector<int> reachable =
      opportunity_reachable(market, platform, allocation, trade.first);

  WeightedBipartiteGraph g = trade_graph(market, platform);
  std::vector<char> sold(market.seller_count(), 0);
  for (const Edge& e : allocation) sold[e.second] = 1;
  std::vector<std::vector<int>> incident(market.buyer_count());
  for (const Edge& e : g.edges) incident[e.first].push_back(e.second);

  Rational lowest = values[trade.first];
  for (int b : reachable) {
    for (int s : incident[b]) {
      if (!sold[s]) return Rational(0);
    }
    if (values[b] < lowest) lowest = values[b];
  }
  return lowest;
}

SolveReport report_for_edges(const Market& market, PlatformEdgeSet platform,
                             const std::string& solver_name,
                             bool certified_optimal) {
  std::sort(platform.edges.begin(), platform.edges.end());
  SolveReport report;
  report.equilibrium = revenue_favoring_equilibrium(market, platform);
  report.welfare = social_welfare(market, platform);
  report.revenue = platform_revenue(market, platform, report.equilibrium);
  report.optimal_welfare = optimal_welfare(market);
  report.platform_edges = std::move(platform);
  report.certified_optimal = certified_optimal;
  report.solver_name = solver_name;
  return report;
}

}  // namespace platmatch
