#include "irviz/ir_model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace irviz {

const IRNode& IRGraph::node(NodeId id) const {
  auto it = nodes.find(id);
  if (it == nodes.end()) {
    throw std::out_of_range("no node " + std::to_string(id) + " in IR " + std::to_string(ir_id));
  }
  return it->second;
}

std::optional<PhaseExecution> IRGraph::phase_at(Ordinal ordinal) const {
  for (const auto& p : phase_sequence) {
    if (p.exec_ordinal == ordinal) return p;
  }
  return std::nullopt;
}

void IRGraph::normalize_edges() {
  for (auto& e : edges) e = make_edge(e.a, e.b);
  std::erase_if(edges, [](const Edge& e) { return e.a == e.b; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

std::map<NodeId, std::vector<NodeId>> adjacency(const IRGraph& g) {
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const auto& [id, _] : g.nodes) adj[id];
  for (const auto& e : g.edges) {
    if (e.a == e.b) continue;
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (auto& [_, ns] : adj) {
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  }
  return adj;
}

std::vector<std::string> phase_names(const IRNode& n) {
  std::vector<std::string> names;
  names.reserve(1 + n.optimized_in.size());
  names.push_back(n.generated_in.name);
  for (const auto& p : n.optimized_in) names.push_back(p.name);
  return names;
}

namespace {

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
}

std::string phase_str(const PhaseExecution& p) {
  return "'" + p.name + "'#" + std::to_string(p.exec_ordinal);
}

}  // namespace

std::vector<std::string> validate_ir_graph(const IRGraph& g) {
  std::vector<std::string> out;

  std::set<PhaseExecution> known_phases;
  std::set<Ordinal> ordinals;
  for (const auto& p : g.phase_sequence) {
    if (p.name.empty()) {
      out.push_back("phase with ordinal " + std::to_string(p.exec_ordinal) + " has an empty name");
    }
    if (!ordinals.insert(p.exec_ordinal).second) {
      out.push_back("duplicate exec_ordinal " + std::to_string(p.exec_ordinal) +
                    " in phase_sequence");
    }
    known_phases.insert(p);
  }

  for (const auto& [key, n] : g.nodes) {
    const std::string who = "node " + std::to_string(key);
    if (n.node_id != key) {
      out.push_back(who + " is stored under a different node_id " + std::to_string(n.node_id));
    }
    if (n.generated_in.name.empty()) {
      out.push_back(who + " has an empty generating phase name");
    }
    if (!known_phases.contains(n.generated_in)) {
      out.push_back(who + " references unknown generating phase " + phase_str(n.generated_in));
    }
    std::set<PhaseExecution> seen;
    for (const auto& p : n.optimized_in) {
      if (p == n.generated_in) {
        out.push_back(who + " lists its generating phase " + phase_str(p) + " in optimized_in");
      }
      if (!seen.insert(p).second) {
        out.push_back(who + " lists optimizing phase " + phase_str(p) + " twice");
      }
      if (!known_phases.contains(p)) {
        out.push_back(who + " references unknown optimizing phase " + phase_str(p));
      }
    }
    if (n.multiplicity != 1 + n.merged_from.size()) {
      out.push_back(who + " has multiplicity " + std::to_string(n.multiplicity) + " but absorbed " +
                    std::to_string(n.merged_from.size()) + " nodes");
    }
  }

  std::set<Edge> edges;
  for (const auto& raw : g.edges) {
    const Edge e = make_edge(raw.a, raw.b);
    if (e.a == e.b) {
      out.push_back("self-loop at node " + std::to_string(e.a));
      continue;
    }
    for (NodeId end : {e.a, e.b}) {
      if (!g.nodes.contains(end)) {
        out.push_back("edge " + edge_str(e) + " references missing node " + std::to_string(end));
      }
    }
    if (!edges.insert(e).second) {
      out.push_back("duplicate edge " + edge_str(e));
    }
  }
  return out;
}

}  // namespace irviz
