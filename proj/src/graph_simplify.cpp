#include "irviz/graph_simplify.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>

namespace irviz {

IRGraph remove_dead_nodes(const IRGraph& g) {
  std::set<NodeId> live;
  for (const auto& e : g.edges) {
    if (e.a == e.b) continue;
    live.insert(e.a);
    live.insert(e.b);
  }
  IRGraph out = g;
  std::erase_if(out.nodes, [&](const auto& kv) { return !live.contains(kv.first); });
  return out;
}

namespace {

using Neighborhood = std::set<NodeId>;

std::set<std::string> optimizing_names(const IRNode& n) {
  std::set<std::string> names;
  for (const auto& p : n.optimized_in) names.insert(p.name);
  return names;
}

bool same_attributes(const IRNode& a, const IRNode& b) {
  return a.opcode == b.opcode && a.ir_id == b.ir_id &&
         a.generated_in.name == b.generated_in.name && optimizing_names(a) == optimizing_names(b);
}

bool twins(NodeId a, const Neighborhood& na, NodeId b, const Neighborhood& nb) {
  const std::size_t sa = na.size() - (na.contains(b) ? 1 : 0);
  const std::size_t sb = nb.size() - (nb.contains(a) ? 1 : 0);
  if (sa != sb) return false;
  auto ia = na.begin();
  auto ib = nb.begin();
  while (true) {
    while (ia != na.end() && *ia == b) ++ia;
    while (ib != nb.end() && *ib == a) ++ib;
    if (ia == na.end() || ib == nb.end()) return ia == na.end() && ib == nb.end();
    if (*ia != *ib) return false;
    ++ia;
    ++ib;
  }
}

using AttributeKey = std::tuple<std::string, IrId, std::string, std::set<std::string>>;

AttributeKey key_of(const IRNode& n) {
  return {n.opcode, n.ir_id, n.generated_in.name, optimizing_names(n)};
}

}  // namespace

bool mergeable(const IRNode& a, const IRNode& b, const IRGraph& g) {
  if (a.node_id == b.node_id || !same_attributes(a, b)) return false;
  Neighborhood na;
  Neighborhood nb;
  for (const auto& e : g.edges) {
    if (e.a == e.b) continue;
    if (e.a == a.node_id) na.insert(e.b);
    if (e.b == a.node_id) na.insert(e.a);
    if (e.a == b.node_id) nb.insert(e.b);
    if (e.b == b.node_id) nb.insert(e.a);
  }
  return twins(a.node_id, na, b.node_id, nb);
}

IRGraph merge_equivalent_nodes(const IRGraph& g) {
  std::map<NodeId, Neighborhood> adj;
  for (const auto& [id, ns] : adjacency(g)) adj.emplace(id, Neighborhood(ns.begin(), ns.end()));

  // Only nodes with equal attributes can ever merge, so pairs are searched
  // within attribute buckets.
  std::map<AttributeKey, std::set<NodeId>> buckets;
  for (const auto& [id, n] : g.nodes) buckets[key_of(n)].insert(id);

  IRGraph out = g;
  bool changed = false;
  while (true) {
    std::optional<std::pair<NodeId, NodeId>> best;
    for (const auto& [_, ids] : buckets) {
      if (ids.size() < 2) continue;
      if (best && *ids.begin() > best->first) continue;
      bool found = false;
      for (auto ia = ids.begin(); ia != ids.end() && !found; ++ia) {
        if (best && *ia > best->first) break;
        for (auto ib = std::next(ia); ib != ids.end(); ++ib) {
          if (best && *ia == best->first && *ib >= best->second) break;
          if (twins(*ia, adj.at(*ia), *ib, adj.at(*ib))) {
            best = {*ia, *ib};
            found = true;
            break;
          }
        }
      }
    }
    if (!best) break;
    changed = true;

    const auto [keep, gone] = *best;
    IRNode absorbed = std::move(out.nodes.at(gone));
    out.nodes.erase(gone);
    buckets.at(key_of(absorbed)).erase(gone);

    IRNode& survivor = out.nodes.at(keep);
    survivor.multiplicity += absorbed.multiplicity;
    survivor.merged_from.push_back(absorbed.origin());
    survivor.merged_from.insert(survivor.merged_from.end(), absorbed.merged_from.begin(),
                                absorbed.merged_from.end());

    for (NodeId x : adj.at(gone)) {
      adj.at(x).erase(gone);
      if (x == keep) continue;
      adj.at(x).insert(keep);
      adj.at(keep).insert(x);
    }
    adj.at(keep).erase(gone);
    adj.erase(gone);
  }

  if (!changed) return out;
  out.edges.clear();
  for (const auto& [a, ns] : adj) {
    for (NodeId b : ns) {
      if (a < b) out.edges.push_back(Edge{a, b});
    }
  }
  return out;
}

}  // namespace irviz
