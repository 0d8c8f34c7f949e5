#include "platmatch/approx_solvers.hpp"

#include <algorithm>
#include <numeric>

#include "platmatch/errors.hpp"
#include "platmatch/matching.hpp"

namespace platmatch {

namespace {

// H_k = 1 + 1/2 + ... + 1/k.
Rational harmonic(int k) {
  Rational h = 0;
  for (int i = 1; i <= k; ++i) h += Rational(1, i);
  return h;
}

// Buyers ordered by (value desc, matched-in-M first, index asc); the
// matched preference only matters at value ties and keeps the top-buyer
// set consistent with a max-weight matching M of the world graph.
std::vector<int> top_buyers(const std::vector<Rational>& values,
                            const std::vector<bool>& matched, int take) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (values[a] != values[b]) return values[a] > values[b];
    if (matched[a] != matched[b]) return matched[a];
    return a < b;
  });
  order.resize(std::min<std::size_t>(order.size(), take));
  return order;
}

// Sorts buyer indices by (value desc, index asc).
void sort_buyers_by_value(std::vector<int>& buyers,
                          const std::vector<Rational>& values) {
  std::stable_sort(buyers.begin(), buyers.end(), [&](int a, int b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return a < b;
  });
}

}  // namespace

PlatformEdgeSet welfare_maximizing_edges(const Market& market) {
  market.validate();
  WeightedBipartiteGraph g;
  g.left_count = market.buyer_count();
  g.right_count = market.seller_count();
  for (int b = 0; b < market.buyer_count(); ++b)
    for (int s = 0; s < market.seller_count(); ++s)
      if (market.value(b, s) > 0) g.add_edge(b, s, market.value(b, s));
  g.normalize();
  auto [matching, weight] = max_weight_matching(g);
  (void)weight;
  PlatformEdgeSet out;
  for (const Edge& e : matching)
    if (!market.has_world_edge(e.first, e.second)) out.edges.push_back(e);
  return out;
}

ConversionReport greedy_conversion(const Market& market,
                                   const PlatformEdgeSet& candidates) {
  market.validate();
  validate_platform_edges(market, candidates);

  ConversionReport report;
  report.input_edges = candidates;
  report.input_edges.edges = candidates.edges;
  std::sort(report.input_edges.edges.begin(), report.input_edges.edges.end());
  report.harmonic_k = static_cast<int>(report.input_edges.edges.size());
  Rational base = social_welfare(market, PlatformEdgeSet{});
  report.input_delta_w = social_welfare(market, report.input_edges) - base;
  report.guarantee = report.harmonic_k == 0
                         ? Rational(0)
                         : report.input_delta_w / harmonic(report.harmonic_k);
  report.revenue = 0;
  report.chosen_subset.edges = {};

  PlatformEdgeSet current = report.input_edges;
  while (!current.edges.empty()) {
    Equilibrium eq = revenue_favoring_equilibrium(market, current);
    Rational revenue = platform_revenue(market, current, eq);
    if (revenue > report.revenue) {
      report.revenue = revenue;
      report.chosen_subset = current;
    }
    // Drop the edge earning the least under this equilibrium (an edge
    // that does not transact earns 0); lexicographically first on ties.
    std::size_t drop = 0;
    Rational drop_earning;
    bool have = false;
    for (std::size_t i = 0; i < current.edges.size(); ++i) {
      const Edge& e = current.edges[i];
      Rational earning = 0;
      if (std::binary_search(eq.allocation.begin(), eq.allocation.end(), e))
        earning = eq.prices[e.second];
      if (!have || earning < drop_earning) {
        have = true;
        drop_earning = earning;
        drop = i;
      }
    }
    current.edges.erase(current.edges.begin() + drop);
  }
  return report;
}

SolveReport greedy_solve(const Market& market) {
  ConversionReport conv =
      greedy_conversion(market, welfare_maximizing_edges(market));
  return report_for_edges(market, conv.chosen_subset, "greedy", false);
}

SolveReport hom_full_conversion(const Market& market) {
  market.validate();
  if (!is_homogeneous(market)) throw ClassError("market is not homogeneous");
  std::vector<Rational> values = homogeneous_values(market);
  const int n = market.buyer_count();
  const int m = market.seller_count();

  WeightedBipartiteGraph world;
  world.left_count = n;
  world.right_count = m;
  for (const Edge& e : market.world_edges)
    world.add_edge(e.first, e.second, market.value(e.first, e.second));
  world.normalize();
  auto [matching, weight] = max_weight_matching(world);
  (void)weight;

  std::vector<bool> matched(n, false);
  std::vector<bool> seller_sold(m, false);
  for (const Edge& e : matching) {
    matched[e.first] = true;
    seller_sold[e.second] = true;
  }

  std::vector<int> tops = top_buyers(values, matched, std::min(n, m));
  std::vector<bool> is_top(n, false);
  for (int b : tops) is_top[b] = true;

  // Buyers that should transact in the optimum but do not in M.
  std::vector<int> new_buyers;
  for (int b : tops)
    if (!matched[b] && values[b] > 0) new_buyers.push_back(b);

  // Seller pool: sellers of displaced matched buyers, then unsold ones.
  std::vector<int> pool;
  for (const Edge& e : matching)
    if (!is_top[e.first]) pool.push_back(e.second);
  std::sort(pool.begin(), pool.end());
  for (int s = 0; s < m; ++s)
    if (!seller_sold[s]) pool.push_back(s);

  PlatformEdgeSet out;
  for (std::size_t i = 0; i < new_buyers.size(); ++i) {
    int b = new_buyers[i];
    int s = pool[i];
    if (!market.has_world_edge(b, s)) out.edges.emplace_back(b, s);
  }
  std::sort(out.edges.begin(), out.edges.end());
  return report_for_edges(market, out, "hom-convert", false);
}

namespace {

// World graph restricted to the top buyers, with seller `s` removed.
// Lefts are positions into `tops`; rights keep market seller indices
// except that seller `s` has no incident edges.
BipartiteGraph reduced_world(const Market& market, const std::vector<int>& tops,
                             int s) {
  BipartiteGraph g;
  g.left_count = static_cast<int>(tops.size());
  g.right_count = market.seller_count();
  g.adj.assign(g.left_count, {});
  for (int i = 0; i < g.left_count; ++i)
    for (int t = 0; t < market.seller_count(); ++t)
      if (t != s && market.has_world_edge(tops[i], t)) g.adj[i].push_back(t);
  return g;
}

}  // namespace

std::optional<std::pair<Rational, PlatformEdgeSet>> max_pair_price(
    const Market& market, int b, int s) {
  market.validate();
  if (!is_homogeneous(market)) throw ClassError("market is not homogeneous");
  const int n = market.buyer_count();
  const int m = market.seller_count();
  if (b < 0 || b >= n || s < 0 || s >= m)
    throw InstanceError("buyer or seller index out of range");
  if (market.has_world_edge(b, s))
    throw InstanceError("pair already shares a world edge");
  std::vector<Rational> values = homogeneous_values(market);

  // b must belong to SOME top-min(n,m) buyer set: its value must reach
  // the min(n,m)-th largest. Build the top set with b forced in so value
  // ties never exclude the queried buyer.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  sort_buyers_by_value(order, values);
  const int take = std::min(n, m);
  if (values[b] < values[order[take - 1]])
    throw InstanceError("buyer is not among the top min(n,m) buyers");
  std::vector<int> tops;
  for (int buyer : order) {
    if (buyer == b) continue;
    if (static_cast<int>(tops.size()) < take - 1) tops.push_back(buyer);
  }
  tops.push_back(b);
  sort_buyers_by_value(tops, values);

  // Drop the lowest-value top buyers one at a time (never b itself) and
  // keep the last violator found: its minimum member value is the
  // largest over all rounds, i.e. the best price.
  std::vector<int> removal = tops;  // value desc, so remove from the back
  std::optional<std::vector<int>> best;  // violator as market buyer indices

  std::vector<bool> active(tops.size(), true);
  for (std::size_t round = 0;; ++round) {
    (void)round;
    // Restrict the world graph (minus s) to the still-active top buyers.
    BipartiteGraph g = reduced_world(market, tops, s);
    BipartiteGraph h;
    std::vector<int> lefts;  // positions into tops
    for (std::size_t i = 0; i < tops.size(); ++i)
      if (active[i]) lefts.push_back(static_cast<int>(i));
    h.left_count = static_cast<int>(lefts.size());
    h.right_count = g.right_count;
    h.adj.assign(h.left_count, {});
    int b_local = -1;
    for (int i = 0; i < h.left_count; ++i) {
      h.adj[i] = g.adj[lefts[i]];
      if (tops[lefts[i]] == b) b_local = i;
    }
    if (b_local < 0) break;  // b was removed; no further rounds
    if (auto cert = vertex_hall_violator(h, b_local)) {
      std::vector<int> violator;
      for (int l : cert->violator) violator.push_back(tops[lefts[l]]);
      std::sort(violator.begin(), violator.end());
      best = violator;
    }
    // Remove the lowest-value remaining buyer (excluding b when it is
    // the lowest we stop instead, since b must stay).
    int lowest = -1;
    for (int i = static_cast<int>(tops.size()) - 1; i >= 0; --i)
      if (active[i] && tops[i] != b) {
        lowest = i;
        break;
      }
    bool others_left = false;
    for (std::size_t i = 0; i < tops.size(); ++i)
      if (active[i] && tops[i] != b) others_left = true;
    if (!others_left) break;
    active[lowest] = false;
  }

  if (!best) return std::nullopt;
  const std::vector<int>& violator = *best;
  Rational price = values[violator.front()];
  for (int v : violator) price = std::min(price, values[v]);
  if (price == 0) return std::nullopt;

  // Realizing edges: (b,s) plus a max matching of the rest of the
  // violator into its world neighbourhood (minus s), plus the remaining
  // top buyers onto the remaining sellers.
  std::vector<int> nbhd;  // world neighbours of the violator, without s
  {
    std::vector<bool> seen(m, false);
    for (int v : violator)
      for (int t = 0; t < m; ++t)
        if (t != s && market.has_world_edge(v, t)) seen[t] = true;
    for (int t = 0; t < m; ++t)
      if (seen[t]) nbhd.push_back(t);
  }
  PlatformEdgeSet out;
  out.edges.emplace_back(b, s);
  std::vector<bool> buyer_used(n, false);
  std::vector<bool> seller_used(m, false);
  buyer_used[b] = true;
  seller_used[s] = true;

  // Largest |N| buyers of the violator (excluding b) take the
  // neighbourhood sellers in index order.
  std::vector<int> rest;
  for (int v : violator)
    if (v != b) rest.push_back(v);
  std::stable_sort(rest.begin(), rest.end(), [&](int a, int c) {
    if (values[a] != values[c]) return values[a] > values[c];
    return a < c;
  });
  for (std::size_t i = 0; i < nbhd.size() && i < rest.size(); ++i) {
    int buyer = rest[i];
    int seller = nbhd[i];
    buyer_used[buyer] = true;
    seller_used[seller] = true;
    if (!market.has_world_edge(buyer, seller))
      out.edges.emplace_back(buyer, seller);
  }
  // The other top buyers fill the remaining sellers.
  std::vector<int> free_sellers;
  for (int t = 0; t < m; ++t)
    if (!seller_used[t]) free_sellers.push_back(t);
  std::size_t next = 0;
  for (int buyer : tops) {
    if (buyer_used[buyer] || next >= free_sellers.size()) continue;
    int seller = free_sellers[next++];
    buyer_used[buyer] = true;
    if (!market.has_world_edge(buyer, seller))
      out.edges.emplace_back(buyer, seller);
  }
  std::sort(out.edges.begin(), out.edges.end());
  return std::make_pair(price, out);
}

SolveReport min_nm_approx(const Market& market) {
  market.validate();
  if (!is_homogeneous(market)) throw ClassError("market is not homogeneous");
  const int n = market.buyer_count();
  const int m = market.seller_count();
  std::vector<Rational> values = homogeneous_values(market);
  if (n == 0 || m == 0)
    return report_for_edges(market, PlatformEdgeSet{}, "min-nm", false);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  sort_buyers_by_value(order, values);
  // Any buyer tied into the top min(n,m) set is admissible.
  const Rational threshold = values[order[std::min(n, m) - 1]];

  Rational best_price = 0;
  std::optional<PlatformEdgeSet> best_edges;
  for (int b = 0; b < n; ++b) {
    if (values[b] < threshold) continue;
    for (int s = 0; s < m; ++s) {
      if (market.has_world_edge(b, s)) continue;
      auto result = max_pair_price(market, b, s);
      if (result && result->first > best_price) {
        best_price = result->first;
        best_edges = result->second;
      }
    }
  }
  PlatformEdgeSet chosen = best_edges.value_or(PlatformEdgeSet{});
  return report_for_edges(market, chosen, "min-nm", false);
}

}  // namespace platmatch
