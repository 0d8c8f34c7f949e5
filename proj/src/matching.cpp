#include "platmatch/matching.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

#include "platmatch/errors.hpp"

namespace platmatch {

namespace {

// Minimum-cost perfect assignment on a square cost matrix (potentials /
// shortest augmenting path formulation). Works for arbitrary signed
// costs. `inf` must exceed any reachable path cost.
template <typename T>
T min_cost_assignment(const std::vector<std::vector<T>>& a, T inf) {
  int n = static_cast<int>(a.size());
  if (n == 0) return T(0);
  std::vector<T> u(n + 1, T(0)), v(n + 1, T(0)), minv(n + 1, T(0));
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = 0;
      T delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        T cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  T total(0);
  for (int j = 1; j <= n; ++j) total += a[p[j] - 1][j - 1];
  return total;
}

constexpr long long kScaleLimit = 1'000'000;           // max denominator lcm
constexpr long long kWeightLimit = 1'000'000'000'000;  // max scaled weight

// Maximum-weight matching value from a dense weight map. Non-edges carry
// weight zero, which is equivalent for the value (never worse to leave a
// pair unmatched than to use a zero edge, and vice versa). Uses 64-bit
// arithmetic when the weights scale to modest integers, exact rationals
// otherwise.
Rational dense_max_weight_value(const std::vector<std::vector<Rational>>& w,
                                int rows, int cols) {
  int n = std::max(rows, cols);
  if (n == 0) return Rational(0);

  BigInt lcm_den(1);
  Rational max_w(0);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      lcm_den = boost::multiprecision::lcm(lcm_den, denominator(w[i][j]));
      if (w[i][j] > max_w) max_w = w[i][j];
    }
  }
  bool fits = lcm_den <= kScaleLimit &&
              Rational(max_w * lcm_den) <= Rational(kWeightLimit) && n <= 512;
  if (fits) {
    std::vector<std::vector<long long>> cost(
        n, std::vector<long long>(n, 0));
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        BigInt scaled = numerator(w[i][j]) * (lcm_den / denominator(w[i][j]));
        cost[i][j] = -scaled.convert_to<long long>();
      }
    }
    long long inf = std::numeric_limits<long long>::max() / 4;
    long long total = min_cost_assignment<long long>(cost, inf);
    return Rational(BigInt(-total), lcm_den);
  }

  std::vector<std::vector<Rational>> cost(n,
                                          std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) cost[i][j] = -w[i][j];
  }
  Rational inf = Rational(max_w + 1) * (n + 1);
  return -min_cost_assignment<Rational>(cost, inf);
}

// Value with some vertices removed (empty masks allowed).
Rational value_with_bans(const WeightedBipartiteGraph& g,
                         const std::vector<char>& ban_left,
                         const std::vector<char>& ban_right) {
  std::vector<int> lmap(g.left_count, -1), rmap(g.right_count, -1);
  int rows = 0, cols = 0;
  for (int l = 0; l < g.left_count; ++l) {
    if (ban_left.empty() || !ban_left[l]) lmap[l] = rows++;
  }
  for (int r = 0; r < g.right_count; ++r) {
    if (ban_right.empty() || !ban_right[r]) rmap[r] = cols++;
  }
  std::vector<std::vector<Rational>> w(rows,
                                       std::vector<Rational>(cols, Rational(0)));
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    int l = lmap[g.edges[k].first], r = rmap[g.edges[k].second];
    if (l >= 0 && r >= 0) w[l][r] = g.weights[k];
  }
  return dense_max_weight_value(w, rows, cols);
}

// Lexicographically smallest maximum-weight matching, generic over the
// effective weights (callers pass either the raw weights or combined
// weight+bonus objectives).
EdgeList lex_max_weight_matching(const WeightedBipartiteGraph& g,
                                 const std::vector<Rational>& weights) {
  WeightedBipartiteGraph eff = g;
  eff.weights = weights;
  Rational target = value_with_bans(eff, {}, {});
  EdgeList chosen;
  Rational chosen_weight(0);
  std::vector<char> used_l(g.left_count, 0), used_r(g.right_count, 0);
  for (std::size_t k = 0; k < eff.edges.size() && chosen_weight != target;
       ++k) {
    auto [l, r] = eff.edges[k];
    if (used_l[l] || used_r[r]) continue;
    used_l[l] = 1;
    used_r[r] = 1;
    Rational rest = value_with_bans(eff, used_l, used_r);
    if (chosen_weight + eff.weights[k] + rest == target) {
      chosen.push_back(eff.edges[k]);
      chosen_weight += eff.weights[k];
    } else {
      used_l[l] = 0;
      used_r[r] = 0;
    }
  }
  return chosen;
}

// Combined objective weights: weight * K + bonus with K large enough that
// the weight level strictly dominates any bonus difference. Weight totals
// are multiples of 1/lcm(weight denominators), so K = lcm * (sum(bonus)+1)
// suffices.
std::vector<Rational> combined_weights(const WeightedBipartiteGraph& g,
                                       const std::vector<Rational>& bonus,
                                       Rational* scale_out) {
  if (bonus.size() != g.weights.size())
    throw InstanceError("bonus vector size mismatch");
  BigInt lcm_den(1);
  Rational bonus_sum(0);
  for (std::size_t k = 0; k < g.weights.size(); ++k) {
    lcm_den = boost::multiprecision::lcm(lcm_den, denominator(g.weights[k]));
    if (bonus[k] < 0) throw InstanceError("negative bonus");
    bonus_sum += bonus[k];
  }
  Rational scale = Rational(lcm_den) * (bonus_sum + 1);
  std::vector<Rational> combined(g.weights.size());
  for (std::size_t k = 0; k < g.weights.size(); ++k) {
    combined[k] = g.weights[k] * scale + bonus[k];
  }
  *scale_out = scale;
  return combined;
}

bool try_kuhn(const BipartiteGraph& g, int l, std::vector<char>& visited,
              std::vector<int>& match_r) {
  for (int r : g.adj[l]) {
    if (visited[r]) continue;
    visited[r] = 1;
    if (match_r[r] < 0 || try_kuhn(g, match_r[r], visited, match_r)) {
      match_r[r] = l;
      return true;
    }
  }
  return false;
}

HallCertificate make_certificate(const BipartiteGraph& g,
                                 std::vector<int> violator) {
  std::sort(violator.begin(), violator.end());
  std::vector<char> seen(g.right_count, 0);
  HallCertificate cert;
  cert.violator = std::move(violator);
  for (int l : cert.violator) {
    for (int r : g.adj[l]) {
      if (!seen[r]) {
        seen[r] = 1;
        cert.neighborhood.push_back(r);
      }
    }
  }
  std::sort(cert.neighborhood.begin(), cert.neighborhood.end());
  cert.difference = static_cast<int>(cert.violator.size()) -
                    static_cast<int>(cert.neighborhood.size());
  return cert;
}

// Left vertices reachable by alternating (unmatched, matched, ...) paths
// from unmatched left vertices; attains |X| - |N(X)| = deficiency.
std::vector<int> alternating_reachable(const BipartiteGraph& g,
                                       const std::vector<int>& match_r) {
  std::vector<int> match_l(g.left_count, -1);
  for (int r = 0; r < g.right_count; ++r) {
    if (match_r[r] >= 0) match_l[match_r[r]] = r;
  }
  std::vector<char> vis_l(g.left_count, 0), vis_r(g.right_count, 0);
  std::queue<int> q;
  for (int l = 0; l < g.left_count; ++l) {
    if (match_l[l] < 0) {
      vis_l[l] = 1;
      q.push(l);
    }
  }
  while (!q.empty()) {
    int l = q.front();
    q.pop();
    for (int r : g.adj[l]) {
      if (vis_r[r]) continue;
      vis_r[r] = 1;
      int l2 = match_r[r];
      if (l2 >= 0 && !vis_l[l2]) {
        vis_l[l2] = 1;
        q.push(l2);
      }
    }
  }
  std::vector<int> out;
  for (int l = 0; l < g.left_count; ++l) {
    if (vis_l[l]) out.push_back(l);
  }
  return out;
}

}  // namespace

void WeightedBipartiteGraph::add_edge(int l, int r, Rational w) {
  edges.push_back({l, r});
  weights.push_back(std::move(w));
}

void WeightedBipartiteGraph::normalize() {
  if (edges.size() != weights.size())
    throw InstanceError("edge/weight size mismatch");
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  EdgeList sorted_edges;
  std::vector<Rational> sorted_weights;
  sorted_edges.reserve(edges.size());
  sorted_weights.reserve(edges.size());
  for (std::size_t k : order) {
    if (!sorted_edges.empty() && sorted_edges.back() == edges[k])
      throw InstanceError("duplicate edge in weighted graph");
    const auto& [l, r] = edges[k];
    if (l < 0 || l >= left_count || r < 0 || r >= right_count)
      throw InstanceError("edge endpoint out of range");
    if (weights[k] < 0) throw InstanceError("negative edge weight");
    sorted_edges.push_back(edges[k]);
    sorted_weights.push_back(weights[k]);
  }
  edges = std::move(sorted_edges);
  weights = std::move(sorted_weights);
}

Rational max_weight_value(const WeightedBipartiteGraph& g) {
  return value_with_bans(g, {}, {});
}

Rational max_weight_value_without_right(const WeightedBipartiteGraph& g,
                                        int banned_right) {
  std::vector<char> ban_r(g.right_count, 0);
  ban_r[banned_right] = 1;
  return value_with_bans(g, {}, ban_r);
}

std::pair<EdgeList, Rational> max_weight_matching(
    const WeightedBipartiteGraph& g) {
  EdgeList m = lex_max_weight_matching(g, g.weights);
  Rational w(0);
  for (const Edge& e : m) {
    auto it = std::lower_bound(g.edges.begin(), g.edges.end(), e);
    w += g.weights[it - g.edges.begin()];
  }
  return {std::move(m), std::move(w)};
}

std::pair<EdgeList, Rational> max_weight_matching_favoring(
    const WeightedBipartiteGraph& g, const std::vector<Rational>& bonus) {
  Rational scale;
  std::vector<Rational> combined = combined_weights(g, bonus, &scale);
  EdgeList m = lex_max_weight_matching(g, combined);
  Rational total(0);
  for (const Edge& e : m) {
    auto it = std::lower_bound(g.edges.begin(), g.edges.end(), e);
    total += bonus[it - g.edges.begin()];
  }
  return {std::move(m), std::move(total)};
}

Rational max_bonus_over_max_weight(const WeightedBipartiteGraph& g,
                                   const std::vector<Rational>& bonus) {
  Rational scale;
  std::vector<Rational> combined = combined_weights(g, bonus, &scale);
  WeightedBipartiteGraph eff = g;
  eff.weights = std::move(combined);
  Rational combined_value = max_weight_value(eff);
  Rational base = max_weight_value(g);
  return combined_value - base * scale;
}

std::vector<EdgeList> enumerate_max_weight_matchings(
    const WeightedBipartiteGraph& g, std::size_t cap) {
  Rational target = max_weight_value(g);
  // Edges grouped by left vertex; suffix_best[l] bounds what lefts >= l
  // can still contribute.
  std::vector<std::vector<std::pair<int, Rational>>> by_left(g.left_count);
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    by_left[g.edges[k].first].push_back({g.edges[k].second, g.weights[k]});
  }
  std::vector<Rational> suffix_best(g.left_count + 1, Rational(0));
  for (int l = g.left_count - 1; l >= 0; --l) {
    Rational best(0);
    for (const auto& [r, w] : by_left[l]) {
      if (w > best) best = w;
    }
    suffix_best[l] = suffix_best[l + 1] + best;
  }

  std::vector<EdgeList> out;
  std::vector<char> used_r(g.right_count, 0);
  EdgeList current;
  Rational current_w(0);

  std::function<void(int)> dfs = [&](int l) {
    if (current_w + suffix_best[l] < target) return;
    if (l == g.left_count) {
      if (current_w == target) {
        if (out.size() >= cap)
          throw CapacityError("matching enumeration cap exceeded");
        out.push_back(current);
      }
      return;
    }
    dfs(l + 1);
    for (const auto& [r, w] : by_left[l]) {
      if (used_r[r]) continue;
      used_r[r] = 1;
      current.push_back({l, r});
      current_w += w;
      dfs(l + 1);
      current_w -= w;
      current.pop_back();
      used_r[r] = 0;
    }
  };
  dfs(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> max_cardinality_matching(const BipartiteGraph& g) {
  std::vector<int> match_r(g.right_count, -1);
  for (int l = 0; l < g.left_count; ++l) {
    std::vector<char> visited(g.right_count, 0);
    try_kuhn(g, l, visited, match_r);
  }
  return match_r;
}

int deficiency(const BipartiteGraph& g) {
  std::vector<int> match_r = max_cardinality_matching(g);
  int matched = 0;
  for (int r = 0; r < g.right_count; ++r) {
    if (match_r[r] >= 0) ++matched;
  }
  return g.left_count - matched;
}

std::optional<HallCertificate> max_difference_hall_violator(
    const BipartiteGraph& g) {
  std::vector<int> match_r = max_cardinality_matching(g);
  int matched = 0;
  for (int r = 0; r < g.right_count; ++r) {
    if (match_r[r] >= 0) ++matched;
  }
  if (g.left_count - matched == 0) return std::nullopt;
  return make_certificate(g, alternating_reachable(g, match_r));
}

std::optional<HallCertificate> vertex_hall_violator(const BipartiteGraph& g,
                                                    int left_vertex) {
  if (left_vertex < 0 || left_vertex >= g.left_count)
    throw InstanceError("vertex_hall_violator: unknown left vertex");
  int k = static_cast<int>(g.adj[left_vertex].size());
  if (k == 0) return make_certificate(g, {left_vertex});

  // Reduced graph without b and N(b); {b} u X' violates Hall in g iff
  // |X'| - |N'(X')| >= k in the reduced graph.
  std::vector<char> drop_r(g.right_count, 0);
  for (int r : g.adj[left_vertex]) drop_r[r] = 1;
  BipartiteGraph reduced;
  reduced.left_count = g.left_count;  // keep indices, b kept edgeless
  reduced.right_count = g.right_count;
  reduced.adj.assign(g.left_count, {});
  for (int l = 0; l < g.left_count; ++l) {
    if (l == left_vertex) continue;
    for (int r : g.adj[l]) {
      if (!drop_r[r]) reduced.adj[l].push_back(r);
    }
  }
  // b itself must not count toward the reduced max-difference set.
  std::vector<int> match_r = max_cardinality_matching(reduced);
  int matched = 0;
  for (int r = 0; r < g.right_count; ++r) {
    if (match_r[r] >= 0) ++matched;
  }
  int reduced_def = (g.left_count - 1) - matched;
  if (reduced_def < k) return std::nullopt;
  std::vector<int> best = alternating_reachable(reduced, match_r);
  best.erase(std::remove(best.begin(), best.end(), left_vertex), best.end());
  best.push_back(left_vertex);
  return make_certificate(g, std::move(best));
}

}  // namespace platmatch
