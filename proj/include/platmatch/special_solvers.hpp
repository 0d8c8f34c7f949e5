#pragma once

#include <optional>
#include <string>
#include <vector>

#include "platmatch/exact_solver.hpp"
#include "platmatch/market.hpp"

namespace platmatch {

enum class MarketClass { General, Homogeneous, Swsh, Shgb };

// "general" | "homogeneous" | "swsh" | "shgb".
std::string market_class_name(MarketClass c);

// Most specific class first: SWSH (homogeneous, every buyer has at most
// one world edge), then SHGB (one common positive value for all pairs,
// buyer world degree at most 2, no two sellers sharing two buyers), then
// homogeneous, then general.
MarketClass classify_market(const Market& market);

// One seller together with the buyers whose single world edge points at
// it; value is the largest member value.
struct SellerSubgraph {
  int seller = -1;
  std::vector<int> buyers;  // sorted by (value desc, index asc)
  Rational value;
};

// Seller-subgraph view of a (preprocessed) SWSH market.
struct SubgraphDecomposition {
  std::vector<SellerSubgraph> seller_subgraphs;  // value desc, seller asc
  std::vector<int> dangling_buyers;              // value desc, index asc
  std::vector<int> dangling_sellers;             // index asc
};

// Interval of seller subgraphs acting as a trading cycle (indices into
// the sorted decomposition, inclusive). reversed flips the direction in
// which sellers pass their good around length-3 cycles.
struct CycleInterval {
  int first = 0;
  int last = 0;
  bool reversed = false;
};

// Where the chain's terminal seller sells to.
struct ChainAttachment {
  enum class Kind { DanglingBuyer, MemberBuyer } kind = Kind::DanglingBuyer;
  int buyer = -1;  // market buyer index
};

// A full candidate solution shape for the SWSH dynamic program.
struct ChainCycleConfig {
  std::vector<CycleInterval> cycles;
  std::optional<int> chain_first;  // chain covers [chain_first .. last subgraph]
  std::optional<ChainAttachment> chain_attachment;
  std::vector<std::pair<int, int>> zero_chain_assignments;  // (seller, buyer)
};

// Decomposes a SWSH market (after no preprocessing; callers preprocess
// first) into seller subgraphs and dangling agents.
SubgraphDecomposition decompose_swsh(const Market& market);

// Exact polynomial solver for SWSH markets (homogeneous, buyer world
// degree <= 1). ClassError on other inputs.
SolveReport swsh_solve(const Market& market);

// Exact polynomial solver for SHGB markets (single common value, buyer
// world degree <= 2, seller pairs sharing at most one buyer). ClassError
// on other inputs.
SolveReport shgb_solve(const Market& market);

// Dispatch: class solvers when applicable, otherwise the exhaustive
// solver within `limits`, falling back to the greedy pipeline (not
// certified) when the instance exceeds them.
SolveReport solve_auto(const Market& market, const ExactLimits& limits = {});

}  // namespace platmatch
