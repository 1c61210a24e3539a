#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "irviz/ir_model.hpp"

namespace irviz {

/// Structural fingerprint used to match nodes across variants. Node ids and
/// addresses deliberately play no part.
struct NodeSignature {
  std::string opcode;
  std::string generated_phase;
  std::vector<std::string> neighbor_opcodes;  // sorted, with repeats

  friend auto operator<=>(const NodeSignature&, const NodeSignature&) = default;
  friend bool operator==(const NodeSignature&, const NodeSignature&) = default;
};

std::string to_string(const NodeSignature& s);

/// How one phase of one variant differs from the same-named phase of R0.
struct PhaseDiff {
  std::string phase_name;
  IrId variant_ir_id = 0;
  std::vector<NodeId> added_nodes;                // variant node ids, ascending
  std::vector<NodeSignature> missing_signatures;  // sorted multiset

  friend bool operator==(const PhaseDiff&, const PhaseDiff&) = default;
};

struct MergedIR {
  IRGraph graph;
  std::vector<PhaseDiff> diffs;
  /// merged node id -> (source ir_id, node id in the source graph)
  std::map<NodeId, NodeOrigin> provenance;
};

NodeSignature node_signature(const IRNode& n, const IRGraph& g);

/// Per-node signatures for a whole graph; the batch form of node_signature.
std::map<NodeId, NodeSignature> signatures(const IRGraph& g);

std::vector<PhaseDiff> diff_variant(const IRGraph& r0, const IRGraph& ri);

/// diff_variant for every variant. Runs variants in parallel with OpenMP;
/// the result is indexed like `variants` and identical to the serial form.
std::vector<std::vector<PhaseDiff>> diff_variants(const IRGraph& r0,
                                                  std::span<const IRGraph> variants);
std::vector<std::vector<PhaseDiff>> diff_variants_serial(const IRGraph& r0,
                                                         std::span<const IRGraph> variants);

/// Folds each variant's differing nodes into a copy of `r0`. Variants are
/// applied in ascending ir_id; added nodes get fresh ids and keep their ir_id.
MergedIR merge_candidates(const IRGraph& r0, std::span<const IRGraph> variants);

}  // namespace irviz
