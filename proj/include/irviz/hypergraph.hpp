#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "irviz/ir_model.hpp"

namespace irviz {

/// One optimization phase as a metro line. `id` is a decimal ordinal, or
/// several ascending ordinals joined with '@' once same-name runs merge.
struct Hyperedge {
  std::string id;
  std::string name;
  std::set<NodeId> members;

  std::vector<Ordinal> ordinals() const;
  Ordinal first_ordinal() const;

  friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

struct Hypergraph {
  std::map<NodeId, IRNode> nodes;
  std::vector<Hyperedge> hyperedges;

  const Hyperedge* find(std::string_view name) const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;
};

/// Parses "3" or "1@4@9". Throws std::invalid_argument on anything else,
/// including non-increasing sequences.
std::vector<Ordinal> parse_hyperedge_id(std::string_view id);
std::string format_hyperedge_id(const std::vector<Ordinal>& ordinals);

/// One hyperedge per phase execution referenced by a node, ordered by
/// ordinal. Graph edges are not carried over.
Hypergraph extract_hypergraph(const IRGraph& g);

/// Collapses hyperedges sharing a name. Groups keep the position of their
/// first hyperedge; members are unioned and ordinals concatenated with '@'.
Hypergraph merge_same_name_hyperedges(const Hypergraph& h);

/// Merges stations with equal opcode, ir_id, generating phase name and
/// optimizing phase names. The smallest node id survives.
Hypergraph merge_stations_by_opcode(const Hypergraph& h);

/// Empty iff membership matches node phase data and no member is dangling.
std::vector<std::string> validate_hypergraph(const Hypergraph& h);

}  // namespace irviz
