#include "platmatch/json_io.hpp"

#include <algorithm>
#include <fstream>

#include "platmatch/errors.hpp"

namespace platmatch {

namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& key,
                    const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(where + ": missing field '" + key + "'");
  return j.at(key);
}

std::vector<std::string> id_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected array of ids");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) throw ParseError(where + ": ids must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

Edge id_pair(const Market& market, const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw ParseError(where + ": expected [buyer, seller] id pair");
  int b = market.buyer_index(j[0].get<std::string>());
  int s = market.seller_index(j[1].get<std::string>());
  if (b < 0) throw ParseError(where + ": unknown buyer '" +
                              j[0].get<std::string>() + "'");
  if (s < 0) throw ParseError(where + ": unknown seller '" +
                              j[1].get<std::string>() + "'");
  return {b, s};
}

json edge_ids(const Market& market, const Edge& e) {
  return json::array({market.buyers[e.first], market.sellers[e.second]});
}

}  // namespace

Rational rational_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    auto parsed = parse_rational(j.get<std::string>());
    if (parsed) return *parsed;
    throw ParseError(where + ": bad rational literal '" +
                     j.get<std::string>() + "'");
  }
  throw ParseError(where + ": expected integer or \"num/den\" string");
}

json rational_to_json(const Rational& value) {
  return json(rational_to_string(value));
}

Market market_from_json(const json& j) {
  Market m;
  m.buyers = id_list(require(j, "buyers", "market"), "market.buyers");
  m.sellers = id_list(require(j, "sellers", "market"), "market.sellers");
  m.values.assign(m.buyer_count(),
                  std::vector<Rational>(m.seller_count(), Rational(0)));

  const json& vals = require(j, "valuations", "market");
  if (!vals.is_array()) throw ParseError("market.valuations: expected array");
  for (std::size_t i = 0; i < vals.size(); ++i) {
    std::string where = "market.valuations[" + std::to_string(i) + "]";
    const json& entry = vals[i];
    int b = m.buyer_index(
        require(entry, "buyer", where).get_ref<const std::string&>());
    int s = m.seller_index(
        require(entry, "seller", where).get_ref<const std::string&>());
    if (b < 0 || s < 0) throw ParseError(where + ": unknown agent id");
    m.values[b][s] = rational_from_json(require(entry, "value", where), where);
    if (m.values[b][s] < 0) throw ParseError(where + ": negative value");
  }

  const json& world = require(j, "world_edges", "market");
  if (!world.is_array()) throw ParseError("market.world_edges: expected array");
  for (std::size_t i = 0; i < world.size(); ++i) {
    m.world_edges.push_back(
        id_pair(m, world[i], "market.world_edges[" + std::to_string(i) + "]"));
  }
  std::sort(m.world_edges.begin(), m.world_edges.end());
  try {
    m.validate();
  } catch (const InstanceError& err) {
    throw ParseError(std::string("market: ") + err.what());
  }
  return m;
}

json market_to_json(const Market& market) {
  json j;
  j["buyers"] = market.buyers;
  j["sellers"] = market.sellers;
  json vals = json::array();
  for (int b = 0; b < market.buyer_count(); ++b) {
    for (int s = 0; s < market.seller_count(); ++s) {
      if (market.value(b, s) == 0) continue;
      vals.push_back({{"buyer", market.buyers[b]},
                      {"seller", market.sellers[s]},
                      {"value", rational_to_json(market.value(b, s))}});
    }
  }
  j["valuations"] = std::move(vals);
  json world = json::array();
  for (const Edge& e : market.world_edges) world.push_back(edge_ids(market, e));
  j["world_edges"] = std::move(world);
  return j;
}

Market load_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return market_from_json(j);
}

void save_market(const Market& market, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << market_to_json(market).dump(2) << "\n";
}

PlatformEdgeSet edges_from_json(const Market& market, const json& j) {
  const json& edges = require(j, "edges", "edge set");
  if (!edges.is_array()) throw ParseError("edge set: expected edges array");
  PlatformEdgeSet set;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    set.edges.push_back(
        id_pair(market, edges[i], "edges[" + std::to_string(i) + "]"));
  }
  std::sort(set.edges.begin(), set.edges.end());
  try {
    validate_platform_edges(market, set);
  } catch (const InstanceError& err) {
    throw ParseError(std::string("edge set: ") + err.what());
  }
  return set;
}

json edges_to_json(const Market& market, const PlatformEdgeSet& set) {
  json edges = json::array();
  for (const Edge& e : set.edges) edges.push_back(edge_ids(market, e));
  return json{{"edges", std::move(edges)}};
}

PlatformEdgeSet load_edges(const Market& market, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return edges_from_json(market, j);
}

EdgeList allocation_from_json(const Market& market, const json& j) {
  if (!j.is_array()) throw ParseError("allocation: expected array of pairs");
  EdgeList out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(
        id_pair(market, j[i], "allocation[" + std::to_string(i) + "]"));
  }
  std::sort(out.begin(), out.end());
  return out;
}

json allocation_to_json(const Market& market, const EdgeList& allocation) {
  json out = json::array();
  for (const Edge& e : allocation) out.push_back(edge_ids(market, e));
  return out;
}

json equilibrium_to_json(const Market& market, const Equilibrium& eq) {
  json j;
  j["allocation"] = allocation_to_json(market, eq.allocation);
  json prices = json::object();
  json prices_decimal = json::object();
  for (int s = 0; s < market.seller_count(); ++s) {
    prices[market.sellers[s]] = rational_to_json(eq.prices[s]);
    prices_decimal[market.sellers[s]] = rational_to_double(eq.prices[s]);
  }
  j["prices"] = std::move(prices);
  j["prices_decimal"] = std::move(prices_decimal);
  return j;
}

json report_to_json(const Market& market, const SolveReport& report) {
  json j;
  j["solver"] = report.solver_name;
  j["certified_optimal"] = report.certified_optimal;
  j["platform_edges"] = edges_to_json(market, report.platform_edges)["edges"];
  j["equilibrium"] = equilibrium_to_json(market, report.equilibrium);
  j["welfare"] = rational_to_json(report.welfare);
  j["welfare_decimal"] = rational_to_double(report.welfare);
  j["revenue"] = rational_to_json(report.revenue);
  j["revenue_decimal"] = rational_to_double(report.revenue);
  j["optimal_welfare"] = rational_to_json(report.optimal_welfare);
  j["optimal_welfare_decimal"] = rational_to_double(report.optimal_welfare);
  return j;
}

}  // namespace platmatch
