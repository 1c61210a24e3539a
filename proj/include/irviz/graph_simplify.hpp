#pragma once

#include "irviz/ir_model.hpp"

namespace irviz {

/// Drops every node with no incident edge.
IRGraph remove_dead_nodes(const IRGraph& g);

/// True when `a` and `b` carry the same opcode, the same generating phase
/// name, the same set of optimizing phase names and the same ir_id, and
/// have identical neighborhoods once the pair itself is disregarded.
bool mergeable(const IRNode& a, const IRNode& b, const IRGraph& g);

/// Merges mergeable pairs until none remain. Each round takes the
/// lexicographically smallest (a, b) pair; `a` survives and absorbs `b`.
IRGraph merge_equivalent_nodes(const IRGraph& g);

}  // namespace irviz
