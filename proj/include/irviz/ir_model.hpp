#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace irviz {

using NodeId = std::uint32_t;
using IrId = std::int32_t;
using Ordinal = std::uint32_t;

/// Reserved separator for concatenated hyperedge ids; never legal in a phase name.
inline constexpr char kIdDelimiter = '@';

/// One run of an optimization phase. `exec_ordinal` is the position in the
/// compilation's phase sequence and doubles as the phase id shown to users.
struct PhaseExecution {
  std::string name;
  Ordinal exec_ordinal = 0;

  friend auto operator<=>(const PhaseExecution&, const PhaseExecution&) = default;
  friend bool operator==(const PhaseExecution&, const PhaseExecution&) = default;
};

/// Identity of a node as it existed somewhere upstream. Used both for
/// merge provenance and for the list of nodes a station absorbed.
struct NodeOrigin {
  IrId ir_id = 0;
  NodeId node_id = 0;
  std::string address;

  friend auto operator<=>(const NodeOrigin&, const NodeOrigin&) = default;
  friend bool operator==(const NodeOrigin&, const NodeOrigin&) = default;
};

struct IRNode {
  NodeId node_id = 0;
  std::string address;
  std::string opcode;
  IrId ir_id = 0;
  PhaseExecution generated_in;
  std::vector<PhaseExecution> optimized_in;
  std::vector<NodeOrigin> merged_from;
  std::uint32_t multiplicity = 1;

  NodeOrigin origin() const { return {ir_id, node_id, address}; }

  friend bool operator==(const IRNode&, const IRNode&) = default;
};

/// Unordered pair of node ids. `make_edge` normalizes so that a <= b.
struct Edge {
  NodeId a = 0;
  NodeId b = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

inline Edge make_edge(NodeId x, NodeId y) { return x <= y ? Edge{x, y} : Edge{y, x}; }

/// Sea-of-nodes IR for one compilation. Edges are kept as a list so that
/// malformed input (self-loops, duplicates) stays representable until
/// `validate_ir_graph` reports it.
struct IRGraph {
  IrId ir_id = 0;
  std::map<NodeId, IRNode> nodes;
  std::vector<Edge> edges;
  std::vector<PhaseExecution> phase_sequence;

  const IRNode& node(NodeId id) const;
  bool contains(NodeId id) const { return nodes.contains(id); }
  std::optional<PhaseExecution> phase_at(Ordinal ordinal) const;

  /// Sort and deduplicate edges, dropping self-loops.
  void normalize_edges();

  friend bool operator==(const IRGraph&, const IRGraph&) = default;
};

/// Sorted neighbor lists for every node in `g` (isolated nodes map to an
/// empty list).
std::map<NodeId, std::vector<NodeId>> adjacency(const IRGraph& g);

/// Names of the phases a node belongs to: its generating phase followed by
/// the optimizing phases, in the order stored on the node.
std::vector<std::string> phase_names(const IRNode& n);

/// Empty iff every structural invariant of the graph and its nodes holds.
std::vector<std::string> validate_ir_graph(const IRGraph& g);

}  // namespace irviz
