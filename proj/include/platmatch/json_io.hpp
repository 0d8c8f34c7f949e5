#pragma once

#include <json.hpp>
#include <string>

#include "platmatch/market.hpp"

namespace platmatch {

// Market JSON:
// {"buyers":[...], "sellers":[...],
//  "valuations":[{"buyer":..,"seller":..,"value":"3/2"},...],
//  "world_edges":[["b1","s1"],...]}
// Values are decimal-integer or "num/den" strings; round-trips are
// bit-exact. Schema violations raise ParseError.
Market market_from_json(const nlohmann::json& j);
nlohmann::json market_to_json(const Market& market);

Market load_market(const std::string& path);
void save_market(const Market& market, const std::string& path);

// PlatformEdgeSet JSON: {"edges":[["b1","s2"],...]} (ids resolved against
// the market).
PlatformEdgeSet edges_from_json(const Market& market, const nlohmann::json& j);
nlohmann::json edges_to_json(const Market& market, const PlatformEdgeSet& set);
PlatformEdgeSet load_edges(const Market& market, const std::string& path);

// Allocation JSON: a plain list of [buyer, seller] id pairs.
EdgeList allocation_from_json(const Market& market, const nlohmann::json& j);
nlohmann::json allocation_to_json(const Market& market,
                                  const EdgeList& allocation);

// Equilibrium / report fragments. Every rational is emitted as an exact
// string plus an advisory "<key>_decimal" double.
nlohmann::json equilibrium_to_json(const Market& market,
                                   const Equilibrium& eq);
nlohmann::json report_to_json(const Market& market, const SolveReport& report);

// Parses exact JSON text into a rational (accepts integer strings or
// "num/den"); throws ParseError.
Rational rational_from_json(const nlohmann::json& j, const std::string& where);
nlohmann::json rational_to_json(const Rational& value);

}  // namespace platmatch
