#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "irviz/diff_merge.hpp"
#include "irviz/synth.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace irviz {
namespace {

using testing::GraphBuilder;

// start - parameter - call - checkpoint, plus a loose "deoptimize" in EO.
GraphBuilder base_builder(IrId ir_id = 0) {
  GraphBuilder b(ir_id);
  b.phase("BytecodeGraphBuilder", 0).phase("Inlining", 1).phase("EarlyOptimization", 2);
  return b;
}

IRGraph r0_fixture() {
  return base_builder()
      .node(1, "start", 0)
      .node(2, "parameter", 0)
      .node(3, "call", 1, {2})
      .node(4, "checkpoint", 0)
      .edge(1, 2)
      .edge(2, 3)
      .edge(3, 4)
      .build();
}

// The same graph as r0_fixture under different ids and addresses.
GraphBuilder renamed_builder(IrId ir_id) {
  GraphBuilder b = base_builder(ir_id);
  b.node(40, "start", 0)
      .node(30, "parameter", 0)
      .node(20, "call", 1, {2})
      .node(10, "checkpoint", 0)
      .edge(40, 30)
      .edge(30, 20)
      .edge(20, 10);
  for (NodeId id : {10, 20, 30, 40}) b.address(id, "0xdead" + std::to_string(id));
  return b;
}

// Brute-force check of one phase's diff: counts per signature computed from
// raw edge scans, then the size of the excess and the shortfall.
void expect_counts_consistent(const IRGraph& r0, const IRGraph& ri, const PhaseDiff& d) {
  auto sig = [](const IRGraph& g, NodeId v) {
    std::vector<std::string> ops;
    for (NodeId m : oracle::neighbors(g, v)) ops.push_back(g.nodes.at(m).opcode);
    std::sort(ops.begin(), ops.end());
    return std::make_tuple(g.nodes.at(v).opcode, g.nodes.at(v).generated_in.name, ops);
  };
  auto in_phase = [&](const IRNode& n) {
    if (n.generated_in.name == d.phase_name) return true;
    return std::any_of(n.optimized_in.begin(), n.optimized_in.end(),
                       [&](const auto& p) { return p.name == d.phase_name; });
  };
  std::map<decltype(sig(r0, 0)), long> count;
  for (const auto& [id, n] : ri.nodes) {
    if (in_phase(n)) ++count[sig(ri, id)];
  }
  for (const auto& [id, n] : r0.nodes) {
    if (in_phase(n)) --count[sig(r0, id)];
  }
  long excess = 0;
  long shortfall = 0;
  for (const auto& [_, c] : count) {
    if (c > 0) excess += c;
    if (c < 0) shortfall -= c;
  }
  EXPECT_EQ(static_cast<long>(d.added_nodes.size()), excess) << d.phase_name;
  EXPECT_EQ(static_cast<long>(d.missing_signatures.size()), shortfall) << d.phase_name;
}

TEST(NodeSignature, IsolatedReturn) {
  const IRGraph g = base_builder().node(7, "return", 1).build();
  EXPECT_EQ(node_signature(g.node(7), g), (NodeSignature{"return", "Inlining", {}}));
}

TEST(NodeSignature, AddWithTwoConstants) {
  const IRGraph g = base_builder()
                        .node(1, "add", 2)
                        .node(2, "const", 0)
                        .node(3, "const", 0)
                        .edge(1, 2)
                        .edge(3, 1)
                        .build();
  EXPECT_EQ(node_signature(g.node(1), g),
            (NodeSignature{"add", "EarlyOptimization", {"const", "const"}}));
}

TEST(NodeSignature, IgnoresIdsAndAddresses) {
  const IRGraph a = r0_fixture();
  const IRGraph b = renamed_builder(1).build();
  EXPECT_EQ(node_signature(a.node(3), a), node_signature(b.node(20), b));
  EXPECT_EQ(signatures(a).at(3), node_signature(a.node(3), a));
}

TEST(DiffVariant, StructurallyIdenticalVariantHasNoDiffs) {
  EXPECT_TRUE(diff_variant(r0_fixture(), renamed_builder(1).build()).empty());
}

TEST(DiffVariant, ExtraCheckboundsNodeInEarlyOptimization) {
  const IRGraph r0 = r0_fixture();
  const IRGraph ri = renamed_builder(1).node(50, "checkbounds", 2).build();
  const auto diffs = diff_variant(r0, ri);
  ASSERT_EQ(diffs.size(), 1u);
  EXPECT_EQ(diffs[0].phase_name, "EarlyOptimization");
  EXPECT_EQ(diffs[0].variant_ir_id, 1);
  EXPECT_EQ(diffs[0].added_nodes, std::vector<NodeId>{50});
  EXPECT_TRUE(diffs[0].missing_signatures.empty());
  expect_counts_consistent(r0, ri, diffs[0]);
}

TEST(DiffVariant, MissingNodeIsReportedNotAdded) {
  const IRGraph r0 = base_builder()
                         .node(1, "start", 0)
                         .node(2, "parameter", 0)
                         .node(9, "deoptimize", 2)
                         .edge(1, 2)
                         .build();
  const IRGraph ri = base_builder(3).node(5, "start", 0).node(6, "parameter", 0).edge(5, 6).build();
  const auto diffs = diff_variant(r0, ri);
  ASSERT_EQ(diffs.size(), 1u);
  EXPECT_EQ(diffs[0].phase_name, "EarlyOptimization");
  EXPECT_TRUE(diffs[0].added_nodes.empty());
  const std::vector<NodeSignature> expected{NodeSignature{"deoptimize", "EarlyOptimization", {}}};
  EXPECT_EQ(diffs[0].missing_signatures, expected);
  expect_counts_consistent(r0, ri, diffs[0]);
}

TEST(DiffVariant, GreedyMatchingPrefersLowerIds) {
  const IRGraph r0 = base_builder().node(1, "const", 2).build();
  const IRGraph ri = base_builder(2).node(8, "const", 2).node(3, "const", 2).build();
  const auto diffs = diff_variant(r0, ri);
  ASSERT_EQ(diffs.size(), 1u);
  EXPECT_EQ(diffs[0].added_nodes, std::vector<NodeId>{8});
}

TEST(DiffVariant, CountsMatchBruteForceOnRandomPairs) {
  std::mt19937_64 rng(21);
  testing::RandomGraphOptions o;
  o.max_nodes = 14;
  o.ir_ids = 1;
  for (int trial = 0; trial < 200; ++trial) {
    const IRGraph r0 = testing::random_graph(rng, o);
    IRGraph ri = testing::random_graph(rng, o);
    ri.ir_id = 1;
    for (const auto& d : diff_variant(r0, ri)) expect_counts_consistent(r0, ri, d);
  }
}

TEST(MergeCandidates, IdenticalVariantsLeaveR0Untouched) {
  const IRGraph r0 = r0_fixture();
  std::vector<IRGraph> variants{renamed_builder(1).build(), renamed_builder(2).build()};
  const MergedIR m = merge_candidates(r0, variants);
  EXPECT_EQ(m.graph, r0);
  EXPECT_TRUE(m.diffs.empty());
}

// The variant generates the checkpoint in EarlyOptimization instead of graph
// building. Its call neighbor keeps R0's signature, so the inserted node is
// wired to R0's call node and nothing else changes.
TEST(MergeCandidates, AddedNodeAttachesToMatchedNeighbor) {
  const IRGraph r0 = r0_fixture();
  const IRGraph ri = base_builder(1)
                         .node(40, "start", 0)
                         .node(30, "parameter", 0)
                         .node(20, "call", 1, {2})
                         .node(10, "checkpoint", 2)
                         .edge(40, 30)
                         .edge(30, 20)
                         .edge(20, 10)
                         .build();
  const MergedIR m = merge_candidates(r0, std::vector<IRGraph>{ri});
  ASSERT_EQ(m.graph.nodes.size(), r0.nodes.size() + 1);
  ASSERT_EQ(m.graph.edges.size(), r0.edges.size() + 1);
  const IRNode& added = m.graph.nodes.rbegin()->second;
  EXPECT_EQ(added.node_id, 5u);
  EXPECT_EQ(added.opcode, "checkpoint");
  EXPECT_EQ(added.ir_id, 1);
  EXPECT_EQ(added.generated_in, (PhaseExecution{"EarlyOptimization", 2}));
  EXPECT_EQ(m.graph.edges.back(), (Edge{3, 5}));
  EXPECT_EQ(m.provenance.at(5), (NodeOrigin{1, 10, "0x1010"}));
  EXPECT_TRUE(validate_ir_graph(m.graph).empty());
  // The graph-building phase lost its checkpoint in this variant.
  ASSERT_EQ(m.diffs.size(), 2u);
}

TEST(MergeCandidates, NineOfNineteenVariantsAddToEarlyOptimization) {
  const IRGraph r0 = r0_fixture();
  std::vector<IRGraph> variants;
  for (IrId v = 1; v <= 19; ++v) {
    GraphBuilder b = renamed_builder(v);
    if (v % 2 == 0 && v <= 18) b.node(100, "checkbounds" + std::to_string(v), 2);
    variants.push_back(b.build());
  }
  const MergedIR m = merge_candidates(r0, variants);
  std::size_t foreign = 0;
  for (const auto& [_, n] : m.graph.nodes) {
    const bool in_eo = n.generated_in.name == "EarlyOptimization";
    if (in_eo && n.ir_id != 0) ++foreign;
  }
  EXPECT_EQ(foreign, 9u);
  EXPECT_TRUE(validate_ir_graph(m.graph).empty());
}

TEST(MergeCandidates, UnknownVariantPhasesGetFreshOrdinals) {
  const IRGraph r0 = r0_fixture();
  GraphBuilder b = renamed_builder(1);
  b.phase("LoopPeeling", 3).phase("LoopPeeling", 4).node(77, "loop", 3, {4});
  const MergedIR m = merge_candidates(r0, std::vector<IRGraph>{b.build()});
  EXPECT_TRUE(validate_ir_graph(m.graph).empty());
  const IRNode& added = m.graph.nodes.rbegin()->second;
  EXPECT_EQ(added.generated_in, (PhaseExecution{"LoopPeeling", 3}));
  EXPECT_EQ(added.optimized_in, (std::vector<PhaseExecution>{{"LoopPeeling", 4}}));
}

// Invariants over synthetic families and over unrelated random variants.
class MergeProperties : public ::testing::TestWithParam<int> {};

TEST_P(MergeProperties, MonotoneTotalOrderInsensitive) {
  const int seed = GetParam();
  SynthSpec spec;
  spec.n_variants = 6;
  spec.n_buggy_variants = static_cast<std::uint32_t>(seed % 7);
  spec.nodes_min = 20;
  spec.nodes_max = 60;
  spec.phases_min = 8;
  spec.phases_max = 25;
  spec.injection = seed % 3 == 0 ? Injection::kRemoved : Injection::kAdded;
  auto bundle = generate_bundle(static_cast<std::uint64_t>(seed), spec).bundle;

  // Mix in one unrelated random graph so that diffs are dense.
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  testing::RandomGraphOptions o;
  o.max_nodes = 15;
  o.ir_ids = 1;
  IRGraph wild = testing::random_graph(rng, o);
  wild.ir_id = 99;
  for (auto& [_, n] : wild.nodes) n.ir_id = 99;
  bundle.variants.push_back(wild);

  const IRGraph& r0 = bundle.original;
  const MergedIR m = merge_candidates(r0, bundle.variants);
  ASSERT_TRUE(validate_ir_graph(m.graph).empty());

  std::size_t added_total = 0;
  for (const auto& v : bundle.variants) {
    std::set<NodeId> added;
    for (const auto& d : diff_variant(r0, v)) added.insert(d.added_nodes.begin(), d.added_nodes.end());
    added_total += added.size();
  }
  EXPECT_EQ(m.graph.nodes.size(), r0.nodes.size() + added_total);
  for (const auto& [id, n] : r0.nodes) ASSERT_EQ(m.graph.nodes.at(id), n);

  std::set<std::pair<IrId, NodeId>> sources;
  for (const auto& [id, n] : m.graph.nodes) {
    if (n.ir_id == 0) continue;
    const NodeOrigin& o2 = m.provenance.at(id);
    EXPECT_EQ(o2.ir_id, n.ir_id);
    EXPECT_TRUE(sources.emplace(o2.ir_id, o2.node_id).second);
  }

  auto permuted = bundle.variants;
  std::reverse(permuted.begin(), permuted.end());
  std::rotate(permuted.begin(), permuted.begin() + 2, permuted.end());
  const MergedIR p = merge_candidates(r0, permuted);
  auto per_phase = [](const IRGraph& g) {
    std::map<std::string, std::multiset<std::tuple<std::string, IrId>>> out;
    for (const auto& [_, n] : g.nodes) {
      for (const auto& name : phase_names(n)) out[name].emplace(n.opcode, n.ir_id);
    }
    return out;
  };
  EXPECT_EQ(per_phase(p.graph), per_phase(m.graph));
}

INSTANTIATE_TEST_SUITE_P(Seeds, MergeProperties, ::testing::Range(1, 25));

TEST(MergeCandidates, SelfMergeIsIdentity) {
  SynthSpec spec;
  spec.n_variants = 0;
  spec.n_buggy_variants = 0;
  spec.nodes_min = spec.nodes_max = 80;
  spec.phases_min = spec.phases_max = 12;
  const auto r0 = generate_bundle(4, spec).bundle.original;
  IRGraph clone = r0;
  clone.ir_id = 1;
  for (auto& [_, n] : clone.nodes) n.ir_id = 1;
  const MergedIR m = merge_candidates(r0, std::vector<IRGraph>{clone});
  EXPECT_EQ(m.graph, r0);
}

}  // namespace
}  // namespace irviz
