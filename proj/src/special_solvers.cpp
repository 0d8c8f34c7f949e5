#include "platmatch/special_solvers.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "platmatch/approx_solvers.hpp"
#include "platmatch/errors.hpp"
#include "platmatch/market_ops.hpp"
#include "platmatch/matching.hpp"

namespace platmatch {

std::string market_class_name(MarketClass c) {
  switch (c) {
    case MarketClass::General: return "general";
    case MarketClass::Homogeneous: return "homogeneous";
    case MarketClass::Swsh: return "swsh";
    case MarketClass::Shgb: return "shgb";
  }
  return "general";
}

namespace {

std::vector<int> world_degrees(const Market& market) {
  std::vector<int> deg(market.buyer_count(), 0);
  for (const Edge& e : market.world_edges) ++deg[e.first];
  return deg;
}

bool single_positive_value(const Market& market) {
  if (market.buyer_count() == 0 || market.seller_count() == 0) return false;
  const Rational& c = market.value(0, 0);
  if (c <= 0) return false;
  for (int b = 0; b < market.buyer_count(); ++b)
    for (int s = 0; s < market.seller_count(); ++s)
      if (market.value(b, s) != c) return false;
  return true;
}

bool seller_pairs_share_at_most_one(const Market& market) {
  std::map<Edge, int> pair_count;  // (seller, seller) -> shared buyers
  std::vector<std::vector<int>> nb(market.buyer_count());
  for (const Edge& e : market.world_edges) nb[e.first].push_back(e.second);
  for (const auto& sellers : nb)
    for (std::size_t i = 0; i < sellers.size(); ++i)
      for (std::size_t j = i + 1; j < sellers.size(); ++j)
        if (++pair_count[{sellers[i], sellers[j]}] > 1) return false;
  return true;
}

}  // namespace

MarketClass classify_market(const Market& market) {
  market.validate();
  bool homog = is_homogeneous(market);
  std::vector<int> deg = world_degrees(market);
  int max_deg = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  if (homog && max_deg <= 1) return MarketClass::Swsh;
  if (single_positive_value(market) && max_deg <= 2 &&
      seller_pairs_share_at_most_one(market))
    return MarketClass::Shgb;
  if (homog) return MarketClass::Homogeneous;
  return MarketClass::General;
}

// ---------------------------------------------------------------------------
// SWSH
// ---------------------------------------------------------------------------

namespace {

struct SwshContext {
  const Market* market = nullptr;
  std::vector<Rational> vals;      // per-buyer homogeneous value
  std::vector<int> kept_buyers;    // after the n != m preprocessing
  std::vector<int> kept_sellers;
  SubgraphDecomposition dec;       // over the kept agents, global indices
  Rational dangling_total;         // sum of dangling-buyer values
};

// Sorts buyer indices by (value desc, index asc).
void sort_by_value(std::vector<int>& buyers, const std::vector<Rational>& v) {
  std::stable_sort(buyers.begin(), buyers.end(), [&](int a, int b) {
    if (v[a] != v[b]) return v[a] > v[b];
    return a < b;
  });
}

SubgraphDecomposition decompose(const Market& market,
                                const std::vector<Rational>& vals,
                                const std::vector<int>& kept_buyers,
                                const std::vector<int>& kept_sellers) {
  SubgraphDecomposition dec;
  std::vector<bool> buyer_kept(market.buyer_count(), false);
  for (int b : kept_buyers) buyer_kept[b] = true;
  std::map<int, std::vector<int>> members;  // seller -> member buyers
  for (int s : kept_sellers) members[s];
  for (const Edge& e : market.world_edges)
    if (buyer_kept[e.first] && members.count(e.second))
      members[e.second].push_back(e.first);

  std::vector<bool> buyer_in_subgraph(market.buyer_count(), false);
  for (auto& [seller, buyers] : members) {
    if (buyers.empty()) {
      dec.dangling_sellers.push_back(seller);
      continue;
    }
    SellerSubgraph sub;
    sub.seller = seller;
    sub.buyers = buyers;
    sort_by_value(sub.buyers, vals);
    sub.value = vals[sub.buyers.front()];
    for (int b : sub.buyers) buyer_in_subgraph[b] = true;
    dec.seller_subgraphs.push_back(std::move(sub));
  }
  std::stable_sort(dec.seller_subgraphs.begin(), dec.seller_subgraphs.end(),
                   [](const SellerSubgraph& a, const SellerSubgraph& b) {
                     if (a.value != b.value) return a.value > b.value;
                     return a.seller < b.seller;
                   });
  for (int b : kept_buyers)
    if (!buyer_in_subgraph[b]) dec.dangling_buyers.push_back(b);
  sort_by_value(dec.dangling_buyers, vals);
  std::sort(dec.dangling_sellers.begin(), dec.dangling_sellers.end());
  return dec;
}

// Kept-buyer choices for the n > m preprocessing. Only the m largest
// buyers can transact, but buyers tied at the cutoff value are not
// interchangeable: a tie-buyer without a world edge weakly dominates one
// with a world edge (a platform edge can replicate the world edge, and
// its price then counts as revenue), while among world-edged ties the
// best multiset of anchored sellers depends on the instance. Buyers
// above the cutoff are forced, dangling ties fill slots first, and the
// remaining slots range over every per-seller composition of the
// world-edged ties.
std::vector<std::vector<int>> swsh_kept_choices(const Market& market,
                                                const std::vector<Rational>& vals) {
  const int n = market.buyer_count();
  const int m = market.seller_count();
  if (n <= m) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return {all};
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  sort_by_value(order, vals);
  const Rational cutoff = vals[order[m - 1]];

  std::vector<int> base;  // forced plus dangling ties, in keep order
  std::vector<int> world_seller(n, -1);
  for (const Edge& e : market.world_edges) world_seller[e.first] = e.second;
  std::map<int, std::vector<int>> tie_groups;  // seller -> tied buyers
  int slots = m;
  for (int b : order) {
    if (vals[b] > cutoff) {
      base.push_back(b);
      --slots;
    } else if (vals[b] == cutoff && world_seller[b] >= 0) {
      tie_groups[world_seller[b]].push_back(b);
    }
  }
  for (int b : order)  // dangling ties, value order == id order within tie
    if (vals[b] == cutoff && world_seller[b] < 0 && slots > 0) {
      base.push_back(b);
      --slots;
    }

  std::vector<std::vector<int>> groups;
  for (auto& [seller, buyers] : tie_groups) groups.push_back(buyers);

  std::vector<std::vector<int>> choices;
  std::vector<int> take(groups.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t g, int left) {
    if (choices.size() > 20000)
      throw CapacityError("too many tied buyers in preprocessing");
    if (g == groups.size()) {
      if (left != 0) return;
      std::vector<int> kept = base;
      for (std::size_t i = 0; i < groups.size(); ++i)
        kept.insert(kept.end(), groups[i].begin(), groups[i].begin() + take[i]);
      std::sort(kept.begin(), kept.end());
      choices.push_back(std::move(kept));
      return;
    }
    int cap = std::min<int>(left, static_cast<int>(groups[g].size()));
    for (int j = 0; j <= cap; ++j) {
      take[g] = j;
      rec(g + 1, left - j);
    }
  };
  rec(0, slots);
  if (choices.empty()) {  // slots exceed available ties: keep what exists
    std::vector<int> kept = base;
    for (auto& g : groups) kept.insert(kept.end(), g.begin(), g.end());
    std::sort(kept.begin(), kept.end());
    choices.push_back(std::move(kept));
  }
  return choices;
}

SwshContext make_context(const Market& market, std::vector<int> kept_buyers) {
  SwshContext ctx;
  ctx.market = &market;
  ctx.vals = homogeneous_values(market);
  const int n = market.buyer_count();
  const int m = market.seller_count();
  ctx.kept_buyers = std::move(kept_buyers);

  if (m > n) {
    std::vector<bool> has_edge(m, false);
    std::vector<bool> buyer_kept(n, false);
    for (int b : ctx.kept_buyers) buyer_kept[b] = true;
    for (const Edge& e : market.world_edges)
      if (buyer_kept[e.first]) has_edge[e.second] = true;
    for (int s = 0; s < m; ++s)
      if (has_edge[s]) ctx.kept_sellers.push_back(s);
    for (int s = 0; s < m && static_cast<int>(ctx.kept_sellers.size()) < n; ++s)
      if (!has_edge[s]) ctx.kept_sellers.push_back(s);
    std::sort(ctx.kept_sellers.begin(), ctx.kept_sellers.end());
  } else {
    ctx.kept_sellers.resize(m);
    std::iota(ctx.kept_sellers.begin(), ctx.kept_sellers.end(), 0);
  }

  ctx.dec = decompose(market, ctx.vals, ctx.kept_buyers, ctx.kept_sellers);
  ctx.dangling_total = 0;
  for (int b : ctx.dec.dangling_buyers) ctx.dangling_total += ctx.vals[b];
  return ctx;
}

// An isolated component of a candidate configuration, built up from
// cycle/chain/0-chain pieces. Fresh sellers stand in for the dangling
// sellers assigned later (which one is irrelevant for prices: dangling
// sellers have no other edges).
struct SubBuilder {
  const SwshContext* ctx;
  std::vector<int> buyers;          // global ids, local index = position
  int seller_count = 0;
  EdgeList world;                   // local indices
  EdgeList platform;                // local indices
  EdgeList global_platform;         // (global buyer, global seller) pairs
  std::vector<int> zero_buyers;     // global buyers that need a 0-chain
  std::map<int, int> buyer_local;
  std::map<int, int> seller_local;

  explicit SubBuilder(const SwshContext& c) : ctx(&c) {}

  int buyer(int gb) {
    auto it = buyer_local.find(gb);
    if (it != buyer_local.end()) return it->second;
    int idx = static_cast<int>(buyers.size());
    buyers.push_back(gb);
    buyer_local[gb] = idx;
    return idx;
  }
  int seller(int gs) {
    auto it = seller_local.find(gs);
    if (it != seller_local.end()) return it->second;
    int idx = seller_count++;
    seller_local[gs] = idx;
    return idx;
  }
  void world_edge(int gb, int gs) { world.emplace_back(buyer(gb), seller(gs)); }
  void platform_edge(int gb, int gs) {
    platform.emplace_back(buyer(gb), seller(gs));
    global_platform.emplace_back(gb, gs);
  }
  void zero_chain(int gb) {
    int l = buyer(gb);
    int fresh = seller_count++;
    platform.emplace_back(l, fresh);
    zero_buyers.push_back(gb);
  }

  // Adds a contiguous cycle of subgraphs [a..b]; every non-top member
  // except skip_buyer gets a 0-chain. A length-1 interval is the trivial
  // cycle (the top buys its own seller through the world edge).
  void add_segment(int a, int b, bool reversed, int skip_buyer) {
    const auto& subs = ctx->dec.seller_subgraphs;
    for (int j = a; j <= b; ++j) {
      const SellerSubgraph& sub = subs[j];
      seller(sub.seller);
      for (int gb : sub.buyers) world_edge(gb, sub.seller);
    }
    if (b > a) {
      for (int j = a; j <= b; ++j) {
        int next = reversed ? (j == a ? b : j - 1) : (j == b ? a : j + 1);
        platform_edge(subs[next].buyers.front(), subs[j].seller);
      }
    }
    for (int j = a; j <= b; ++j)
      for (std::size_t i = 1; i < subs[j].buyers.size(); ++i)
        if (subs[j].buyers[i] != skip_buyer) zero_chain(subs[j].buyers[i]);
  }

  // Adds the chain over the subgraph suffix [k..last]: each seller sells
  // to the top of the next-lower subgraph; the last top gets a 0-chain;
  // the terminal seller s_k sells to `target` (a dangling buyer or a
  // non-top member of any already-added subgraph or of the chain).
  void add_chain(int k, const ChainAttachment& target) {
    const auto& subs = ctx->dec.seller_subgraphs;
    const int last = static_cast<int>(subs.size()) - 1;
    for (int j = k; j <= last; ++j) {
      const SellerSubgraph& sub = subs[j];
      seller(sub.seller);
      for (int gb : sub.buyers) world_edge(gb, sub.seller);
    }
    for (int c = k + 1; c <= last; ++c)
      platform_edge(subs[c - 1].buyers.front(), subs[c].seller);
    zero_chain(subs[last].buyers.front());
    for (int j = k; j <= last; ++j)
      for (std::size_t i = 1; i < subs[j].buyers.size(); ++i)
        if (subs[j].buyers[i] != target.buyer) zero_chain(subs[j].buyers[i]);
    if (target.kind == ChainAttachment::Kind::DanglingBuyer) {
      platform_edge(target.buyer, subs[k].seller);
    } else if (!ctx->market->has_world_edge(target.buyer, subs[k].seller)) {
      // Member of another subgraph (or of a higher chain link): a fresh
      // platform edge. A non-top member of S_k itself trades through its
      // existing world edge instead.
      platform_edge(target.buyer, subs[k].seller);
    }
  }

  // Revenue of this component: prices of the platform sellers in the
  // intended allocation, which matches every buyer (hence max-weight).
  Rational revenue() const {
    WeightedBipartiteGraph g;
    g.left_count = static_cast<int>(buyers.size());
    g.right_count = seller_count;
    for (const Edge& e : world) g.add_edge(e.first, e.second, ctx->vals[buyers[e.first]]);
    for (const Edge& e : platform) g.add_edge(e.first, e.second, ctx->vals[buyers[e.first]]);
    g.normalize();
    Rational total = 0;
    for (int gb : buyers) total += ctx->vals[gb];
    Rational rev = 0;
    for (const Edge& e : platform)
      rev += total - max_weight_value_without_right(g, e.second);
    return rev;
  }
};

struct SegInfo {
  Rational rev;
  bool reversed = false;
};

struct SwshPlan {
  // Caches indexed by subgraph interval.
  std::vector<std::vector<SegInfo>> seg;        // best cycle revenue [i][j]
  std::vector<std::vector<Rational>> d2;        // interval DP value
  std::vector<std::vector<bool>> d2_done;
};

Rational segment_revenue(const SwshContext& ctx, int a, int b, bool reversed) {
  SubBuilder sb(ctx);
  sb.add_segment(a, b, reversed, -1);
  return sb.revenue();
}

const SegInfo& seg_best(const SwshContext& ctx, SwshPlan& plan, int a, int b) {
  SegInfo& info = plan.seg[a][b];
  if (info.rev < 0) {
    info.rev = segment_revenue(ctx, a, b, false);
    info.reversed = false;
    if (b - a == 2) {
      Rational alt = segment_revenue(ctx, a, b, true);
      if (alt > info.rev) {
        info.rev = alt;
        info.reversed = true;
      }
    }
  }
  return info;
}

Rational d2_value(const SwshContext& ctx, SwshPlan& plan, int i, int j) {
  if (i > j) return 0;
  if (plan.d2_done[i][j]) return plan.d2[i][j];
  Rational best = -1;
  for (int len = 1; len <= 3 && i + len - 1 <= j; ++len) {
    Rational cand = seg_best(ctx, plan, i, i + len - 1).rev +
                    d2_value(ctx, plan, i + len, j);
    if (cand > best) best = cand;
  }
  plan.d2[i][j] = best;
  plan.d2_done[i][j] = true;
  return best;
}

// Splits [i..j] into the cycle intervals realizing d2_value (shortest
// first segment on ties, matching determinism elsewhere).
void collect_cycles(const SwshContext& ctx, SwshPlan& plan, int i, int j,
                    std::vector<CycleInterval>& out) {
  if (i > j) return;
  Rational target = d2_value(ctx, plan, i, j);
  for (int len = 1; len <= 3 && i + len - 1 <= j; ++len) {
    const SegInfo& info = seg_best(ctx, plan, i, i + len - 1);
    if (info.rev + d2_value(ctx, plan, i + len, j) == target) {
      out.push_back({i, i + len - 1, info.reversed});
      collect_cycles(ctx, plan, i + len, j, out);
      return;
    }
  }
}

struct ChainChoice {
  int k = -1;                       // chain suffix start; -1 = no chain
  ChainAttachment attachment;
  int seg_a = -1, seg_b = -1;       // cycle segment evaluated jointly
  bool seg_reversed = false;        // (only for attachments into a cycle)
};

Rational chain_candidate_revenue(const SwshContext& ctx, SwshPlan& plan,
                                 const ChainChoice& choice) {
  SubBuilder sb(ctx);
  if (choice.seg_a >= 0)
    sb.add_segment(choice.seg_a, choice.seg_b, choice.seg_reversed,
                   choice.attachment.buyer);
  sb.add_chain(choice.k, choice.attachment);
  Rational rev = sb.revenue();
  // Cycles on the untouched subgraphs, plus 0-chains for unused dangling
  // buyers.
  if (choice.seg_a >= 0) {
    rev += d2_value(ctx, plan, 0, choice.seg_a - 1);
    rev += d2_value(ctx, plan, choice.seg_b + 1, choice.k - 1);
  } else {
    rev += d2_value(ctx, plan, 0, choice.k - 1);
  }
  rev += ctx.dangling_total;
  if (choice.attachment.kind == ChainAttachment::Kind::DanglingBuyer)
    rev -= ctx.vals[choice.attachment.buyer];
  return rev;
}

}  // namespace

SubgraphDecomposition decompose_swsh(const Market& market) {
  if (classify_market(market) != MarketClass::Swsh)
    throw ClassError("market is not a SWSH market");
  std::vector<Rational> vals = homogeneous_values(market);
  std::vector<int> all_b(market.buyer_count());
  std::iota(all_b.begin(), all_b.end(), 0);
  std::vector<int> all_s(market.seller_count());
  std::iota(all_s.begin(), all_s.end(), 0);
  return decompose(market, vals, all_b, all_s);
}

namespace {

// Best configuration for one kept-buyer choice, as concrete platform edges.
EdgeList swsh_plan_edges(const SwshContext& ctx) {
  const int count = static_cast<int>(ctx.dec.seller_subgraphs.size());

  SwshPlan plan;
  plan.seg.assign(count, std::vector<SegInfo>(count, SegInfo{Rational(-1), false}));
  plan.d2.assign(count, std::vector<Rational>(count, 0));
  plan.d2_done.assign(count, std::vector<bool>(count, false));

  // Baseline: cycles everywhere, no chain.
  Rational best = d2_value(ctx, plan, 0, count - 1) + ctx.dangling_total;
  std::optional<ChainChoice> best_chain;

  const auto& subs = ctx.dec.seller_subgraphs;
  for (int k = 0; k < count; ++k) {
    std::vector<ChainChoice> options;
    for (int db : ctx.dec.dangling_buyers) {
      ChainChoice c;
      c.k = k;
      c.attachment = {ChainAttachment::Kind::DanglingBuyer, db};
      options.push_back(c);
    }
    // Non-top members of the chain's own subgraphs.
    for (int j = k; j < count; ++j)
      for (std::size_t i = 1; i < subs[j].buyers.size(); ++i) {
        ChainChoice c;
        c.k = k;
        c.attachment = {ChainAttachment::Kind::MemberBuyer, subs[j].buyers[i]};
        options.push_back(c);
      }
    // Non-top members of a cycle below the chain; the hosting cycle must
    // be evaluated jointly since the chain links the two components.
    for (int cidx = 0; cidx < k; ++cidx)
      for (std::size_t i = 1; i < subs[cidx].buyers.size(); ++i)
        for (int a = std::max(0, cidx - 2); a <= cidx; ++a)
          for (int b = cidx; b <= std::min(k - 1, a + 2); ++b) {
            if (b < a) continue;
            ChainChoice c;
            c.k = k;
            c.attachment = {ChainAttachment::Kind::MemberBuyer,
                            subs[cidx].buyers[i]};
            c.seg_a = a;
            c.seg_b = b;
            options.push_back(c);
            if (b - a == 2) {
              c.seg_reversed = true;
              options.push_back(c);
            }
          }
    for (const ChainChoice& c : options) {
      Rational rev = chain_candidate_revenue(ctx, plan, c);
      if (rev > best) {
        best = rev;
        best_chain = c;
      }
    }
  }

  // Rebuild the winning configuration as concrete platform edges.
  EdgeList edges;
  std::vector<int> zero_buyers;
  auto absorb = [&](const SubBuilder& sb) {
    edges.insert(edges.end(), sb.global_platform.begin(),
                 sb.global_platform.end());
    zero_buyers.insert(zero_buyers.end(), sb.zero_buyers.begin(),
                       sb.zero_buyers.end());
  };

  std::vector<CycleInterval> cycles;
  std::vector<int> targeted_db;
  if (best_chain) {
    const ChainChoice& c = *best_chain;
    if (c.seg_a >= 0) {
      collect_cycles(ctx, plan, 0, c.seg_a - 1, cycles);
      collect_cycles(ctx, plan, c.seg_b + 1, c.k - 1, cycles);
    } else {
      collect_cycles(ctx, plan, 0, c.k - 1, cycles);
    }
    SubBuilder sb(ctx);
    if (c.seg_a >= 0)
      sb.add_segment(c.seg_a, c.seg_b, c.seg_reversed, c.attachment.buyer);
    sb.add_chain(c.k, c.attachment);
    absorb(sb);
    if (c.attachment.kind == ChainAttachment::Kind::DanglingBuyer)
      targeted_db.push_back(c.attachment.buyer);
  } else {
    collect_cycles(ctx, plan, 0, count - 1, cycles);
  }
  for (const CycleInterval& ci : cycles) {
    SubBuilder sb(ctx);
    sb.add_segment(ci.first, ci.last, ci.reversed, -1);
    absorb(sb);
  }
  for (int db : ctx.dec.dangling_buyers)
    if (std::find(targeted_db.begin(), targeted_db.end(), db) ==
        targeted_db.end())
      zero_buyers.push_back(db);

  // Highest-value 0-chain buyers take the dangling sellers in id order.
  sort_by_value(zero_buyers, ctx.vals);
  for (std::size_t i = 0;
       i < zero_buyers.size() && i < ctx.dec.dangling_sellers.size(); ++i)
    edges.emplace_back(zero_buyers[i], ctx.dec.dangling_sellers[i]);

  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

SolveReport swsh_solve(const Market& market) {
  if (classify_market(market) != MarketClass::Swsh)
    throw ClassError("market is not a SWSH market");
  std::vector<Rational> vals = homogeneous_values(market);
  std::optional<SolveReport> best;
  for (std::vector<int>& kept : swsh_kept_choices(market, vals)) {
    SwshContext ctx = make_context(market, std::move(kept));
    EdgeList edges = swsh_plan_edges(ctx);
    SolveReport r = report_for_edges(market, PlatformEdgeSet{edges}, "swsh", true);
    if (!best || r.revenue > best->revenue) best = std::move(r);
  }
  return *best;
}

// ---------------------------------------------------------------------------
// SHGB
// ---------------------------------------------------------------------------

namespace {

struct ShgbCandidate {
  std::vector<int> buyers;       // B_v, sorted
  std::vector<int> neighborhood; // N(B_v), sorted
  int revenue_count = 0;         // min(|B_v|,m) - |N| + k_v
  std::vector<int> matched_seller;  // complement-matching partner per B_v
                                    // position (-1 if unmatched)
};

// Evaluates the surplus-set revenue formula; nullopt when the set has
// positive surplus (|N(B_v)| > |B_v|), where the formula does not apply.
std::optional<ShgbCandidate> evaluate_surplus_set(
    const Market& market, const std::vector<std::vector<int>>& nb,
    std::vector<int> buyers) {
  const int m = market.seller_count();
  std::sort(buyers.begin(), buyers.end());
  std::vector<int> nbhd;
  for (int b : buyers) nbhd.insert(nbhd.end(), nb[b].begin(), nb[b].end());
  std::sort(nbhd.begin(), nbhd.end());
  nbhd.erase(std::unique(nbhd.begin(), nbhd.end()), nbhd.end());
  if (nbhd.size() > buyers.size()) return std::nullopt;

  // k_v: how many of N(B_v) can be covered through complement (platform)
  // edges from B_v.
  BipartiteGraph g;
  g.left_count = static_cast<int>(buyers.size());
  g.right_count = static_cast<int>(nbhd.size());
  g.adj.assign(g.left_count, {});
  for (int i = 0; i < g.left_count; ++i)
    for (int j = 0; j < g.right_count; ++j)
      if (!market.has_world_edge(buyers[i], nbhd[j])) g.adj[i].push_back(j);
  std::vector<int> match_r = max_cardinality_matching(g);
  int k_v = 0;
  ShgbCandidate cand;
  cand.matched_seller.assign(buyers.size(), -1);
  for (int j = 0; j < g.right_count; ++j)
    if (match_r[j] >= 0) {
      ++k_v;
      cand.matched_seller[match_r[j]] = nbhd[j];
    }
  cand.buyers = std::move(buyers);
  cand.neighborhood = std::move(nbhd);
  cand.revenue_count = std::min<int>(static_cast<int>(cand.buyers.size()), m) -
                       static_cast<int>(cand.neighborhood.size()) + k_v;
  return cand;
}

}  // namespace

SolveReport shgb_solve(const Market& market) {
  // Check the structural conditions directly: a market where every buyer
  // has world degree <= 1 classifies as SWSH (the more specific tag) but
  // is still valid input here.
  market.validate();
  std::vector<int> deg = world_degrees(market);
  int max_deg = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  if (!single_positive_value(market) || max_deg > 2 ||
      !seller_pairs_share_at_most_one(market))
    throw ClassError("market is not an SHGB market");
  const int n = market.buyer_count();
  const int m = market.seller_count();
  std::vector<std::vector<int>> nb(n);
  for (const Edge& e : market.world_edges) nb[e.first].push_back(e.second);

  // (1) Peel: degree-0/1 buyers always belong to the optimal surplus set;
  // each removes its remaining neighbour, possibly lowering others.
  std::vector<bool> included(n, false);
  std::vector<bool> removed(m, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int b = 0; b < n; ++b) {
      if (included[b]) continue;
      std::vector<int> live;
      for (int s : nb[b])
        if (!removed[s]) live.push_back(s);
      if (live.size() <= 1) {
        included[b] = true;
        if (live.size() == 1) removed[live[0]] = true;
        changed = true;
      }
    }
  }
  int peel_buyers = 0, peel_sellers = 0;
  for (int b = 0; b < n; ++b) peel_buyers += included[b];
  for (int s = 0; s < m; ++s) peel_sellers += removed[s];
  int budget = peel_buyers - peel_sellers;

  // (2) Residual degree-2 buyers form a general graph on the remaining
  // sellers (buyer = edge). Union-find the components.
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::vector<int> residual;
  for (int b = 0; b < n; ++b)
    if (!included[b]) residual.push_back(b);
  for (int b : residual) parent[find(nb[b][0])] = find(nb[b][1]);
  std::map<int, std::pair<int, int>> comp;  // root -> (sellers, buyer-edges)
  std::map<int, std::vector<int>> comp_buyers;
  for (int s = 0; s < m; ++s)
    if (!removed[s]) ++comp[find(s)].first;
  for (int b : residual) {
    int r = find(nb[b][0]);
    ++comp[r].second;
    comp_buyers[r].push_back(b);
  }

  // (3) Non-tree components are free (non-positive surplus); tree
  // components each cost one unit of surplus budget, biggest first.
  std::vector<int> main_set;
  for (int b = 0; b < n; ++b)
    if (included[b]) main_set.push_back(b);
  std::vector<std::pair<int, int>> trees;  // (buyer-edges, root)
  for (const auto& [root, ve] : comp) {
    if (ve.second >= ve.first) {
      budget += ve.second - ve.first;
      const auto& bs = comp_buyers[root];
      main_set.insert(main_set.end(), bs.begin(), bs.end());
    } else {
      trees.emplace_back(ve.second, root);
    }
  }
  std::sort(trees.begin(), trees.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  for (int i = 0; i < static_cast<int>(trees.size()) && i < budget; ++i) {
    const auto& bs = comp_buyers[trees[i].second];
    main_set.insert(main_set.end(), bs.begin(), bs.end());
  }

  // (4) Candidates: the main selection, every set of size <= 2, and all
  // degree-<=1 buyers joined with up to two degree-2 buyers (the
  // exceptional shapes the component argument does not cover).
  std::optional<ShgbCandidate> best;
  auto consider = [&](std::vector<int> buyers) {
    auto cand = evaluate_surplus_set(market, nb, std::move(buyers));
    if (cand && (!best || cand->revenue_count > best->revenue_count))
      best = std::move(cand);
  };
  consider(main_set);
  for (int b = 0; b < n; ++b) consider({b});
  for (int b = 0; b < n; ++b)
    for (int b2 = b + 1; b2 < n; ++b2) consider({b, b2});
  std::vector<int> low_deg, deg2;
  for (int b = 0; b < n; ++b)
    (nb[b].size() <= 1 ? low_deg : deg2).push_back(b);
  consider(low_deg);
  for (std::size_t i = 0; i < deg2.size(); ++i) {
    std::vector<int> set = low_deg;
    set.push_back(deg2[i]);
    consider(set);
    for (std::size_t j = i + 1; j < deg2.size(); ++j) {
      std::vector<int> set2 = set;
      set2.push_back(deg2[j]);
      consider(set2);
    }
  }

  // (5) Realize: k_v complement edges into N(B_v), then the remaining
  // buyers of B_v onto sellers outside N(B_v).
  EdgeList edges;
  if (best && best->revenue_count > 0) {
    const ShgbCandidate& c = *best;
    std::vector<bool> in_nbhd(m, false);
    for (int s : c.neighborhood) in_nbhd[s] = true;
    std::vector<int> outside;
    for (int s = 0; s < m; ++s)
      if (!in_nbhd[s]) outside.push_back(s);
    int extras = std::min<int>(static_cast<int>(c.buyers.size()), m) -
                 static_cast<int>(c.neighborhood.size());
    std::size_t next_seller = 0;
    for (std::size_t i = 0; i < c.buyers.size(); ++i) {
      if (c.matched_seller[i] >= 0) {
        edges.emplace_back(c.buyers[i], c.matched_seller[i]);
      } else if (extras > 0 && next_seller < outside.size()) {
        edges.emplace_back(c.buyers[i], outside[next_seller++]);
        --extras;
      }
    }
    std::sort(edges.begin(), edges.end());
  }
  return report_for_edges(market, PlatformEdgeSet{edges}, "shgb", true);
}

SolveReport solve_auto(const Market& market, const ExactLimits& limits) {
  switch (classify_market(market)) {
    case MarketClass::Swsh:
      return swsh_solve(market);
    case MarketClass::Shgb:
      return shgb_solve(market);
    default:
      break;
  }
  if (market.buyer_count() <= limits.max_buyers &&
      market.seller_count() <= limits.max_sellers) {
    try {
      return optimal_revenue(market, limits);
    } catch (const CapacityError&) {
    }
  }
  return greedy_solve(market);
}

}  // namespace platmatch
