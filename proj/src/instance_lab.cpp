#include "platmatch/instance_lab.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "platmatch/errors.hpp"
#include "platmatch/json_io.hpp"

namespace platmatch {

namespace {

void add_world(Market& m, int b, int s) { m.world_edges.push_back({b, s}); }

void finish(Market& m) {
  std::sort(m.world_edges.begin(), m.world_edges.end());
  m.world_edges.erase(
      std::unique(m.world_edges.begin(), m.world_edges.end()),
      m.world_edges.end());
  m.validate();
}

}  // namespace

Market gen_fig1(int n) {
  if (n < 1) throw InstanceError("gen_fig1: n must be >= 1");
  Market m = make_market(n, n);
  m.values[0][0] = 1;
  for (int i = 1; i < n; ++i) {
    m.values[i][i - 1] = i + 1;
    m.values[i][i] = i + 1;
  }
  finish(m);
  return m;
}

Market gen_fig3(int k) {
  if (k < 1) throw InstanceError("gen_fig3: k must be >= 1");
  Market m;
  for (int i = 1; i <= k; ++i) m.buyers.push_back("b" + std::to_string(i));
  for (int i = 1; i <= k; ++i) m.buyers.push_back("bd" + std::to_string(i));
  for (int i = 1; i <= k; ++i) m.sellers.push_back("s" + std::to_string(i));
  for (int i = 1; i <= k; ++i) m.sellers.push_back("sd" + std::to_string(i));
  m.values.assign(2 * k, std::vector<Rational>(2 * k, Rational(0)));
  for (int i = 0; i < k; ++i) {
    for (int s = 0; s < k; ++s) m.values[i][s] = Rational(1, i + 1);
    for (int s = 0; s < 2 * k; ++s) m.values[k + i][s] = 1;
    for (int s = 0; s < k; ++s) {
      add_world(m, i, s);
      add_world(m, k + i, s);
    }
  }
  finish(m);
  return m;
}

Market gen_fig4(const Rational& eps) {
  if (eps <= 0 || eps >= 1)
    throw InstanceError("gen_fig4: eps must satisfy 0 < eps < 1");
  Market m = make_market(2, 2);
  m.values[0][0] = 1;
  m.values[0][1] = 1;
  m.values[1][0] = 1;
  m.values[1][1] = eps;
  add_world(m, 1, 0);
  finish(m);
  return m;
}

Market gen_mono_example(const Rational& eps) {
  if (eps <= 0) throw InstanceError("gen_mono_example: eps must be > 0");
  Market m = make_market(2, 1);
  m.values[0][0] = 1;
  m.values[1][0] = Rational(1) + eps;
  add_world(m, 0, 0);
  finish(m);
  return m;
}

Market gen_swsh_example() {
  Market m = make_market(4, 4);
  Rational values[4] = {Rational(10), Rational(9), Rational(3), Rational(1)};
  for (int b = 0; b < 4; ++b) {
    for (int s = 0; s < 4; ++s) m.values[b][s] = values[b];
  }
  add_world(m, 0, 0);
  add_world(m, 1, 1);
  add_world(m, 2, 1);
  add_world(m, 3, 2);
  finish(m);
  return m;
}

ReductionBundle gen_sat_reduction(const Cnf& cnf, const Rational& h) {
  int q = cnf.variable_count;
  if (q < 1) throw InstanceError("sat reduction: need at least one variable");
  std::vector<int> pos(q, 0), neg(q, 0);
  for (const auto& clause : cnf.clauses) {
    if (clause.empty() || clause.size() > 3)
      throw InstanceError("sat reduction: clauses must have 1-3 literals");
    for (int lit : clause) {
      int v = std::abs(lit);
      if (v < 1 || v > q) throw InstanceError("sat reduction: bad literal");
      (lit > 0 ? pos : neg)[v - 1]++;
    }
  }
  for (int i = 0; i < q; ++i) {
    if (pos[i] != neg[i])
      throw InstanceError(
          "sat reduction: variable must appear positively and negatively "
          "equally often");
  }

  // Pad with d_i = (x_i or not x_i) so every variable appears exactly t
  // times per sign; the first d_i of each variable claims item index 0.
  int t = 1;
  for (int i = 0; i < q; ++i) t = std::max(t, pos[i] + 1);
  std::vector<std::vector<int>> clauses = cnf.clauses;
  std::vector<int> first_d_clause(q, -1);
  for (int i = 0; i < q; ++i) {
    first_d_clause[i] = static_cast<int>(clauses.size());
    for (int c = 0; c < t - pos[i]; ++c) clauses.push_back({i + 1, -(i + 1)});
  }
  int k = static_cast<int>(clauses.size());
  Rational z(static_cast<long long>(q) * k * t);
  Rational big = (h == 0) ? z + 1 : h;
  if (big < z + 1) throw InstanceError("sat reduction: H must be >= Z+1");

  // Items: alpha_{i,0..t-1}, tau_{i,0..t-1}, then gamma/delta_{i,1..t-1}.
  Market m;
  std::vector<std::vector<int>> alpha(q), tau(q), gamma(q), delta(q);
  auto add_item = [&](const std::string& id) {
    m.sellers.push_back(id);
    return static_cast<int>(m.sellers.size()) - 1;
  };
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < t; ++j) {
      alpha[i].push_back(
          add_item("alpha_" + std::to_string(i + 1) + "_" + std::to_string(j)));
      tau[i].push_back(
          add_item("tau_" + std::to_string(i + 1) + "_" + std::to_string(j)));
    }
  }
  for (int i = 0; i < q; ++i) {
    for (int j = 1; j < t; ++j) {
      gamma[i].push_back(
          add_item("gamma_" + std::to_string(i + 1) + "_" + std::to_string(j)));
      delta[i].push_back(
          add_item("delta_" + std::to_string(i + 1) + "_" + std::to_string(j)));
    }
  }

  // Assign each literal occurrence its item, scanning clauses in order;
  // index 0 is reserved for the variable's first d_i clause.
  std::vector<int> next_pos(q, 1), next_neg(q, 1);
  std::vector<std::vector<int>> clause_items(k);
  for (int c = 0; c < k; ++c) {
    bool is_first_d = false;
    for (int i = 0; i < q; ++i) {
      if (first_d_clause[i] == c) is_first_d = true;
    }
    for (int lit : clauses[c]) {
      int i = std::abs(lit) - 1;
      if (lit > 0) {
        int j = is_first_d ? 0 : next_pos[i]++;
        clause_items[c].push_back(alpha[i][j]);
      } else {
        int j = is_first_d ? 0 : next_neg[i]++;
        clause_items[c].push_back(tau[i][j]);
      }
    }
  }

  // Buyers: U per clause, A/T per (variable, 1..t-1), then dummies.
  int item_count = static_cast<int>(m.sellers.size());
  std::vector<std::vector<Rational>> values;
  auto add_buyer = [&](const std::string& id) {
    m.buyers.push_back(id);
    values.emplace_back(item_count, Rational(0));
    return static_cast<int>(m.buyers.size()) - 1;
  };
  for (int c = 0; c < k; ++c) {
    int u = add_buyer("U" + std::to_string(c + 1));
    for (int item : clause_items[c]) values[u][item] = z;
  }
  for (int i = 0; i < q; ++i) {
    for (int j = 1; j < t; ++j) {
      int a = add_buyer("A" + std::to_string(i + 1) + "_" + std::to_string(j));
      values[a][alpha[i][0]] = z + 1;
      values[a][alpha[i][j]] = z + 1;
      values[a][gamma[i][j - 1]] = z + 1;
      add_world(m, a, alpha[i][0]);
      add_world(m, a, alpha[i][j]);
      int tt = add_buyer("T" + std::to_string(i + 1) + "_" + std::to_string(j));
      values[tt][tau[i][0]] = z + 1;
      values[tt][tau[i][j]] = z + 1;
      values[tt][delta[i][j - 1]] = z + 1;
      add_world(m, tt, tau[i][0]);
      add_world(m, tt, tau[i][j]);
    }
  }
  int dummy_count = 2 * t * q - k;
  for (int d = 0; d < dummy_count; ++d) {
    int buyer = add_buyer("dummy" + std::to_string(d + 1));
    for (int i = 0; i < q; ++i) {
      for (int j = 0; j < t; ++j) {
        values[buyer][alpha[i][j]] = big;
        values[buyer][tau[i][j]] = big;
      }
    }
  }
  m.values = std::move(values);
  finish(m);

  ReductionBundle bundle;
  bundle.market = std::move(m);
  bundle.threshold = Rational(k) * z +
                     Rational(q) * (t - 1) * (2 * z + 1) +
                     big * dummy_count;
  bundle.provenance = {
      {"construction", "sat"},
      {"variables", q},
      {"clauses", cnf.clauses},
      {"padded_clauses", clauses},
      {"t", t},
      {"k", k},
      {"Z", rational_to_string(z)},
      {"H", rational_to_string(big)},
      {"padding",
       "one (x_i | !x_i) clause per variable maps to item index 0; other "
       "occurrences take items in clause-scan order"},
  };
  return bundle;
}

ReductionBundle gen_vc_reduction(int vertex_count,
                                 const std::vector<std::pair<int, int>>& edges,
                                 const Rational& h) {
  if (vertex_count < 1) throw InstanceError("vc reduction: empty graph");
  if (h < 2) throw InstanceError("vc reduction: H must be >= 2");
  std::vector<int> degree(vertex_count, 0);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count || u == v)
      throw InstanceError("vc reduction: bad edge");
    degree[u]++;
    degree[v]++;
  }

  // Minimum vertex cover by brute force (desk scale), smallest cover set
  // in lexicographic subset order for determinism.
  int q = vertex_count;
  std::vector<int> cover;
  for (unsigned mask = 0; mask < (1u << vertex_count); ++mask) {
    bool covers = true;
    for (auto [u, v] : edges) {
      if (!((mask >> u) & 1) && !((mask >> v) & 1)) {
        covers = false;
        break;
      }
    }
    if (!covers) continue;
    int size = __builtin_popcount(mask);
    if (size < q) {
      q = size;
      cover.clear();
      for (int v = 0; v < vertex_count; ++v) {
        if ((mask >> v) & 1) cover.push_back(v);
      }
    }
  }
  std::set<int> in_cover(cover.begin(), cover.end());

  Market m;
  std::vector<int> vertex_item(vertex_count);
  std::vector<std::vector<int>> alpha(vertex_count);
  for (int v = 0; v < vertex_count; ++v) {
    vertex_item[v] = static_cast<int>(m.sellers.size());
    m.sellers.push_back("S" + std::to_string(v + 1));
    for (int i = 1; i <= degree[v]; ++i) {
      alpha[v].push_back(static_cast<int>(m.sellers.size()));
      m.sellers.push_back("alpha_" + std::to_string(v + 1) + "_" +
                          std::to_string(i));
    }
  }
  int item_count = static_cast<int>(m.sellers.size());
  std::vector<std::vector<Rational>> values;
  auto add_buyer = [&](const std::string& id) {
    m.buyers.push_back(id);
    values.emplace_back(item_count, Rational(0));
    return static_cast<int>(m.buyers.size()) - 1;
  };
  std::vector<int> vertex_buyer(vertex_count);
  for (int v = 0; v < vertex_count; ++v) {
    int b = add_buyer("B" + std::to_string(v + 1));
    vertex_buyer[v] = b;
    values[b][vertex_item[v]] = 2;
    for (int item : alpha[v]) {
      values[b][item] = 2;
      add_world(m, b, item);
    }
  }
  std::vector<int> edge_buyer(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    int b = add_buyer("B" + std::to_string(edges[e].first + 1) + "_" +
                      std::to_string(edges[e].second + 1));
    edge_buyer[e] = b;
    for (int item : alpha[edges[e].first]) values[b][item] = 1;
    for (int item : alpha[edges[e].second]) values[b][item] = 1;
  }
  std::vector<int> dummy_buyer(edges.size());
  for (std::size_t d = 0; d < edges.size(); ++d) {
    int b = add_buyer("D" + std::to_string(d + 1));
    dummy_buyer[d] = b;
    for (int v = 0; v < vertex_count; ++v) {
      for (int item : alpha[v]) values[b][item] = h;
    }
  }
  m.values = std::move(values);
  finish(m);

  // Witness configuration from the threshold proof: every vertex buyer
  // takes its own item, each edge buyer takes a fresh alpha item of a
  // cover endpoint, dummies absorb the remaining alpha items.
  PlatformEdgeSet proof;
  std::vector<std::size_t> next_alpha(vertex_count, 0);
  std::vector<char> alpha_used(item_count, 0);
  for (int v = 0; v < vertex_count; ++v) {
    proof.edges.push_back({vertex_buyer[v], vertex_item[v]});
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    int v = in_cover.count(edges[e].first) ? edges[e].first : edges[e].second;
    int item = alpha[v][next_alpha[v]++];
    alpha_used[item] = 1;
    proof.edges.push_back({edge_buyer[e], item});
  }
  std::size_t d = 0;
  for (int v = 0; v < vertex_count; ++v) {
    for (int item : alpha[v]) {
      if (!alpha_used[item]) proof.edges.push_back({dummy_buyer[d++], item});
    }
  }
  std::sort(proof.edges.begin(), proof.edges.end());

  ReductionBundle bundle;
  bundle.threshold = Rational(2 * vertex_count) +
                     (h + 1) * static_cast<int>(edges.size()) - q;
  nlohmann::json jedges = nlohmann::json::array();
  for (auto [u, v] : edges) jedges.push_back({u, v});
  bundle.provenance = {{"construction", "vertex_cover"},
                       {"vertices", vertex_count},
                       {"edges", jedges},
                       {"min_cover_size", q},
                       {"min_cover", cover},
                       {"H", rational_to_string(h)}};
  bundle.market = std::move(m);
  bundle.proof_edges = std::move(proof);
  return bundle;
}

namespace {

Rational small_value(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(0, 16);
  return Rational(num(rng), 2);
}

Rational positive_value(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 16);
  return Rational(num(rng), 2);
}

}  // namespace

Market random_general(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw InstanceError("random_general: sizes must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  Market market = make_market(n, m);
  for (int b = 0; b < n; ++b) {
    for (int s = 0; s < m; ++s) market.values[b][s] = small_value(rng);
  }
  for (int b = 0; b < n; ++b) {
    for (int s = 0; s < m; ++s) {
      if (coin(rng)) add_world(market, b, s);
    }
  }
  finish(market);
  return market;
}

Market random_homogeneous(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1)
    throw InstanceError("random_homogeneous: sizes must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  Market market = make_market(n, m);
  for (int b = 0; b < n; ++b) {
    Rational v = positive_value(rng);
    for (int s = 0; s < m; ++s) market.values[b][s] = v;
  }
  for (int b = 0; b < n; ++b) {
    for (int s = 0; s < m; ++s) {
      if (coin(rng)) add_world(market, b, s);
    }
  }
  finish(market);
  return market;
}

Market random_swsh(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw InstanceError("random_swsh: sizes must be >= 1");
  std::mt19937_64 rng(seed);
  Market market = make_market(n, m);
  for (int b = 0; b < n; ++b) {
    Rational v = positive_value(rng);
    for (int s = 0; s < m; ++s) market.values[b][s] = v;
  }
  // Each buyer knows at most one seller.
  std::uniform_int_distribution<int> pick(-1, m - 1);
  for (int b = 0; b < n; ++b) {
    int s = pick(rng);
    if (s >= 0) add_world(market, b, s);
  }
  finish(market);
  return market;
}

Market random_shgb(int buyers, int sellers, std::uint64_t seed) {
  if (buyers < 1 || sellers < 1)
    throw InstanceError("random_shgb: sizes must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cpick(0, 2);
  Rational c = std::vector<Rational>{Rational(1), Rational(2),
                                     Rational(1, 2)}[cpick(rng)];
  Market market = make_market(buyers, sellers);
  for (int b = 0; b < buyers; ++b) {
    for (int s = 0; s < sellers; ++s) market.values[b][s] = c;
  }
  // Degree <= 2 per buyer; no two buyers share the same seller pair.
  std::set<std::pair<int, int>> used_pairs;
  std::uniform_int_distribution<int> deg(0, 3);  // 0,1 once; 2 twice as likely
  std::uniform_int_distribution<int> spick(0, sellers - 1);
  for (int b = 0; b < buyers; ++b) {
    int d = std::min(deg(rng), 2);
    if (d >= 2 && sellers >= 2) {
      bool placed = false;
      for (int attempt = 0; attempt < 8 && !placed; ++attempt) {
        int s1 = spick(rng), s2 = spick(rng);
        if (s1 == s2) continue;
        auto key = std::minmax(s1, s2);
        if (used_pairs.count({key.first, key.second})) continue;
        used_pairs.insert({key.first, key.second});
        add_world(market, b, s1);
        add_world(market, b, s2);
        placed = true;
      }
      if (!placed) d = 1;
      else continue;
    }
    if (d == 1) add_world(market, b, spick(rng));
  }
  finish(market);
  return market;
}

namespace {

const std::string& require_param(const GenSpec& spec, const std::string& key) {
  auto it = spec.params.find(key);
  if (it == spec.params.end())
    throw InstanceError("gen: missing parameter '" + key + "' for family " +
                        spec.family);
  return it->second;
}

long long int_param(const GenSpec& spec, const std::string& key) {
  try {
    return std::stoll(require_param(spec, key));
  } catch (const std::logic_error&) {
    throw InstanceError("gen: parameter '" + key + "' must be an integer");
  }
}

Rational rational_param(const GenSpec& spec, const std::string& key) {
  auto parsed = parse_rational(require_param(spec, key));
  if (!parsed)
    throw InstanceError("gen: parameter '" + key + "' must be a rational");
  return *parsed;
}

}  // namespace

Market gen_random(const GenSpec& spec) {
  if (spec.family == "fig1") return gen_fig1(static_cast<int>(int_param(spec, "n")));
  if (spec.family == "fig3") return gen_fig3(static_cast<int>(int_param(spec, "k")));
  if (spec.family == "fig4") return gen_fig4(rational_param(spec, "eps"));
  if (spec.family == "mono_example")
    return gen_mono_example(rational_param(spec, "eps"));
  if (spec.family == "swsh_example") return gen_swsh_example();
  if (spec.family == "random_general")
    return random_general(static_cast<int>(int_param(spec, "n")),
                          static_cast<int>(int_param(spec, "m")),
                          static_cast<std::uint64_t>(int_param(spec, "seed")));
  if (spec.family == "random_homogeneous")
    return random_homogeneous(
        static_cast<int>(int_param(spec, "n")),
        static_cast<int>(int_param(spec, "m")),
        static_cast<std::uint64_t>(int_param(spec, "seed")));
  if (spec.family == "random_swsh")
    return random_swsh(static_cast<int>(int_param(spec, "n")),
                       static_cast<int>(int_param(spec, "m")),
                       static_cast<std::uint64_t>(int_param(spec, "seed")));
  if (spec.family == "random_shgb") {
    long long buyers = int_param(spec, "buyers");
    long long sellers = spec.params.count("sellers")
                            ? int_param(spec, "sellers")
                            : std::max<long long>(2, (buyers + 1) / 2 + 1);
    return random_shgb(static_cast<int>(buyers), static_cast<int>(sellers),
                       static_cast<std::uint64_t>(int_param(spec, "seed")));
  }
  throw InstanceError("gen: unknown family '" + spec.family + "'");
}

nlohmann::json bundle_to_json(const ReductionBundle& bundle) {
  nlohmann::json j;
  j["market"] = market_to_json(bundle.market);
  j["threshold"] = rational_to_json(bundle.threshold);
  j["threshold_decimal"] = rational_to_double(bundle.threshold);
  j["provenance"] = bundle.provenance;
  j["proof_edges"] = edges_to_json(bundle.market, bundle.proof_edges)["edges"];
  return j;
}

}  // namespace platmatch
