#include "platmatch/market.hpp"

#include <algorithm>
#include <set>

#include "platmatch/errors.hpp"

namespace platmatch {

bool Market::has_world_edge(int b, int s) const {
  return std::binary_search(world_edges.begin(), world_edges.end(),
                            Edge{b, s});
}

int Market::buyer_index(const std::string& id) const {
  for (int i = 0; i < buyer_count(); ++i) {
    if (buyers[i] == id) return i;
  }
  return -1;
}

int Market::seller_index(const std::string& id) const {
  for (int j = 0; j < seller_count(); ++j) {
    if (sellers[j] == id) return j;
  }
  return -1;
}

void Market::validate() const {
  std::set<std::string> seen;
  for (const auto& id : buyers) {
    if (id.empty()) throw InstanceError("empty buyer id");
    if (!seen.insert("b:" + id).second)
      throw InstanceError("duplicate buyer id: " + id);
  }
  for (const auto& id : sellers) {
    if (id.empty()) throw InstanceError("empty seller id");
    if (!seen.insert("s:" + id).second)
      throw InstanceError("duplicate seller id: " + id);
  }
  if (static_cast<int>(values.size()) != buyer_count())
    throw InstanceError("valuation matrix has wrong number of rows");
  for (const auto& row : values) {
    if (static_cast<int>(row.size()) != seller_count())
      throw InstanceError("valuation matrix has wrong number of columns");
    for (const auto& v : row) {
      if (v < 0) throw InstanceError("negative valuation");
    }
  }
  if (!std::is_sorted(world_edges.begin(), world_edges.end()))
    throw InstanceError("world edges not sorted");
  Edge prev{-1, -1};
  for (const Edge& e : world_edges) {
    if (e.first < 0 || e.first >= buyer_count() || e.second < 0 ||
        e.second >= seller_count())
      throw InstanceError("world edge out of range");
    if (e == prev) throw InstanceError("duplicate world edge");
    prev = e;
  }
}

Market make_market(int buyer_count, int seller_count) {
  Market m;
  for (int i = 1; i <= buyer_count; ++i) m.buyers.push_back("b" + std::to_string(i));
  for (int j = 1; j <= seller_count; ++j) m.sellers.push_back("s" + std::to_string(j));
  m.values.assign(buyer_count, std::vector<Rational>(seller_count, Rational(0)));
  return m;
}

void validate_platform_edges(const Market& market, const PlatformEdgeSet& set) {
  EdgeList sorted = set.edges;
  std::sort(sorted.begin(), sorted.end());
  Edge prev{-1, -1};
  for (const Edge& e : sorted) {
    if (e.first < 0 || e.first >= market.buyer_count() || e.second < 0 ||
        e.second >= market.seller_count())
      throw InstanceError("platform edge out of range");
    if (e == prev) throw InstanceError("duplicate platform edge");
    if (market.has_world_edge(e.first, e.second))
      throw InstanceError("platform edge duplicates a world edge");
    prev = e;
  }
}

bool is_matching(const EdgeList& edges) {
  std::set<int> b, s;
  for (const Edge& e : edges) {
    if (!b.insert(e.first).second) return false;
    if (!s.insert(e.second).second) return false;
  }
  return true;
}

}  // namespace platmatch
