#pragma once

// Small builders and random generators shared by the unit and acceptance
// suites.

#include <algorithm>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "irviz/hypergraph.hpp"
#include "irviz/ingest.hpp"
#include "irviz/ir_model.hpp"

namespace irviz::testing {

class GraphBuilder {
 public:
  explicit GraphBuilder(IrId ir_id = 0) { g_.ir_id = ir_id; }

  GraphBuilder& phase(const std::string& name, Ordinal ordinal) {
    g_.phase_sequence.push_back({name, ordinal});
    return *this;
  }

  /// Phases are named by ordinal; they must already be declared.
  GraphBuilder& node(NodeId id, const std::string& opcode, Ordinal gen,
                     std::initializer_list<Ordinal> opt = {}, IrId ir_id = -1) {
    IRNode n;
    n.node_id = id;
    n.address = "0x" + std::to_string(1000 + id);
    n.opcode = opcode;
    n.ir_id = ir_id < 0 ? g_.ir_id : ir_id;
    n.generated_in = *g_.phase_at(gen);
    for (Ordinal o : opt) n.optimized_in.push_back(*g_.phase_at(o));
    g_.nodes[id] = std::move(n);
    return *this;
  }

  GraphBuilder& edge(NodeId a, NodeId b) {
    g_.edges.push_back(Edge{a, b});
    return *this;
  }

  GraphBuilder& address(NodeId id, std::string addr) {
    g_.nodes.at(id).address = std::move(addr);
    return *this;
  }

  IRGraph build() const { return g_; }

 private:
  IRGraph g_;
};

struct RandomGraphOptions {
  std::size_t max_nodes = 50;
  std::vector<std::string> opcodes = {"add", "const", "phi"};
  std::vector<std::string> phase_names = {"A", "B", "C"};
  std::size_t executions = 5;
  double edge_probability = 0.1;
  std::size_t ir_ids = 2;
};

/// Random valid IR graph. Twins are common because the attribute alphabets
/// are small.
inline IRGraph random_graph(std::mt19937_64& rng, const RandomGraphOptions& o) {
  auto below = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution edge(o.edge_probability);

  IRGraph g;
  for (std::size_t i = 0; i < o.executions; ++i) {
    g.phase_sequence.push_back({o.phase_names[below(o.phase_names.size())], static_cast<Ordinal>(i)});
  }
  const std::size_t n = below(o.max_nodes + 1);
  for (NodeId id = 0; id < n; ++id) {
    IRNode node;
    node.node_id = id;
    node.address = "0x" + std::to_string(4096 + 16 * id);
    node.opcode = o.opcodes[below(o.opcodes.size())];
    node.ir_id = static_cast<IrId>(below(o.ir_ids));
    const auto gen = below(o.executions);
    node.generated_in = g.phase_sequence[gen];
    for (std::size_t k = 0; k < o.executions; ++k) {
      if (k != gen && coin(rng) && coin(rng)) node.optimized_in.push_back(g.phase_sequence[k]);
    }
    g.nodes.emplace(id, std::move(node));
  }
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (edge(rng)) g.edges.push_back({a, b});
    }
  }
  return g;
}

/// Random hypergraph with up to `max_lines` uniquely named lines, built
/// directly rather than through extraction. With `exact`, the maxima are
/// the sizes.
inline Hypergraph random_hypergraph(std::mt19937_64& rng, std::size_t max_lines,
                                    std::size_t max_nodes, bool exact = false) {
  auto between = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const std::size_t lines = exact ? max_lines : between(1, max_lines);
  const std::size_t nodes = exact ? max_nodes : between(1, max_nodes);
  Hypergraph h;
  std::vector<PhaseExecution> phases;
  for (std::size_t i = 0; i < lines; ++i) {
    phases.push_back({"P" + std::to_string(i), static_cast<Ordinal>(i)});
    h.hyperedges.push_back({std::to_string(i), phases.back().name, {}});
  }
  for (NodeId id = 0; id < nodes; ++id) {
    IRNode n;
    n.node_id = id;
    n.address = "0x" + std::to_string(id);
    n.opcode = "op" + std::to_string(between(0, 3));
    n.ir_id = static_cast<IrId>(between(0, 2));
    const auto gen = between(0, lines - 1);
    n.generated_in = phases[gen];
    h.hyperedges[gen].members.insert(id);
    for (std::size_t k = 0; k < lines; ++k) {
      if (k != gen && between(0, 3) == 0) {
        n.optimized_in.push_back(phases[k]);
        h.hyperedges[k].members.insert(id);
      }
    }
    h.nodes.emplace(id, std::move(n));
  }
  return h;
}

/// A family of 1 + 19 graphs in which variants 1..9 each generate one extra
/// checkbounds node in EarlyOptimization, wired to a Typer node. R0 has two
/// EarlyOptimization nodes, so that line ends up with 11 stations of which
/// 9 come from other IRs. The touched Typer node is re-added as well, which
/// dilutes into Typer's 20 original members.
inline DumpBundle nine_of_eleven_bundle() {
  auto family_member = [](IrId ir_id, NodeId offset) {
    GraphBuilder b(ir_id);
    b.phase("BytecodeGraphBuilder", 0).phase("Typer", 1).phase("EarlyOptimization", 2).phase("SimplifiedLowering", 3);
    const std::vector<std::string> typed = {"phi", "numberadd", "loadelement", "checkmaps", "call"};
    b.node(offset + 1, "start", 0).node(offset + 2, "parameter", 0);
    b.node(offset + 3, "checkpoint", 2).node(offset + 4, "loadfield", 2, {3}).node(offset + 5, "return", 3);
    for (NodeId i = 10; i < 30; ++i) b.node(offset + i, typed[i % typed.size()], 1);
    b.edge(offset + 1, offset + 2).edge(offset + 2, offset + 10);
    for (NodeId i = 10; i < 29; ++i) b.edge(offset + i, offset + i + 1);
    b.edge(offset + 29, offset + 3).edge(offset + 3, offset + 4).edge(offset + 4, offset + 5);
    for (NodeId i = 1; i < 30; ++i) {
      if (i <= 5 || i >= 10) b.address(offset + i, "0x" + std::to_string(ir_id) + "0" + std::to_string(4096 + 8 * i));
    }
    return b;
  };
  DumpBundle bundle;
  bundle.original = family_member(0, 0).build();
  for (IrId v = 1; v <= 19; ++v) {
    GraphBuilder b = family_member(v, 100);
    if (v <= 9) b.node(200, "checkbounds", 2).edge(120, 200);
    bundle.variants.push_back(b.build());
  }
  bundle.metadata["fixture"] = "nine-of-eleven";
  return bundle;
}

}  // namespace irviz::testing
