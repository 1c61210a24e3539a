#include <gtest/gtest.h>

#include <random>

#include "irviz/ingest.hpp"
#include "irviz/synth.hpp"
#include "support/fixtures.hpp"

namespace irviz {
namespace {

constexpr const char* kOriginalOnly = R"({
  "metadata": {"program": "poc.js"},
  "graphs": [
    {"ir_id": 0,
     "phase_sequence": [{"name": "BytecodeGraphBuilder", "exec_ordinal": 0},
                        {"name": "EarlyOptimization", "exec_ordinal": 1}],
     "nodes": [{"node_id": 1, "address": "0x10", "opcode": "start", "generated_in": 0, "optimized_in": []},
               {"node_id": 2, "address": "0x18", "opcode": "return", "generated_in": 0, "optimized_in": [1]}],
     "edges": [[1, 2]]}
  ]
})";

TEST(ParseDump, OriginalOnlyHasNoVariants) {
  const DumpBundle b = parse_dump(kOriginalOnly);
  EXPECT_TRUE(b.variants.empty());
  EXPECT_EQ(b.original.nodes.size(), 2u);
  EXPECT_EQ(b.original.nodes.at(2).optimized_in.at(0).name, "EarlyOptimization");
  EXPECT_EQ(b.metadata.at("program"), "poc.js");
}

TEST(ParseDump, FullScaleFamilyOfTwenty) {
  const auto synth = generate_bundle(3, SynthSpec{});
  const DumpBundle b = parse_dump(write_dump(synth.bundle));
  EXPECT_EQ(b.variants.size(), 19u);
  for (const auto& v : b.variants) EXPECT_TRUE(validate_ir_graph(v).empty());
}

TEST(ParseDump, DanglingEdgeNamesTheNode) {
  std::string text = kOriginalOnly;
  text.replace(text.find("[[1, 2]]"), 8, "[[1, 99]]");
  try {
    parse_dump(text);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.violations().size(), 1u);
    EXPECT_NE(e.violations()[0].find("99"), std::string::npos);
  }
}

TEST(ParseDump, SyntaxErrorCarriesPosition) {
  const std::string text = "{\n  \"graphs\": [\n    {\"ir_id\": 0,,}\n  ]\n}";
  try {
    parse_dump(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 1u);
  }
}

TEST(ParseDump, SemanticErrors) {
  auto expect_violation = [](const std::string& text, const std::string& needle) {
    try {
      parse_dump(text);
      ADD_FAILURE() << "accepted: " << needle;
    } catch (const ValidationError& e) {
      bool found = false;
      for (const auto& v : e.violations()) found = found || v.find(needle) != std::string::npos;
      EXPECT_TRUE(found) << e.what();
    }
  };
  const std::string tiny =
      R"({"ir_id": 0, "phase_sequence": [{"name": "A", "exec_ordinal": 0}],)"
      R"( "nodes": [{"node_id": 1, "address": "0x1", "opcode": "start", "generated_in": 0,)"
      R"( "optimized_in": []}], "edges": []})";
  expect_violation(R"({"graphs": [)" + tiny + "," + tiny + "]}", "duplicate ir_id 0");

  std::string unknown = kOriginalOnly;
  unknown.replace(unknown.find("\"optimized_in\": [1]"), 19, "\"optimized_in\": [5]");
  expect_violation(unknown, "unknown phase ordinal 5");

  std::string at = kOriginalOnly;
  at.replace(at.find("EarlyOptimization"), 17, "Early@Optimization");
  expect_violation(at, "reserved '@'");

  std::string no_original = kOriginalOnly;
  no_original.replace(no_original.find("\"ir_id\": 0"), 10, "\"ir_id\": 4");
  expect_violation(no_original, "no graph with ir_id 0");

  std::string missing = kOriginalOnly;
  missing.replace(missing.find("\"opcode\": \"start\", "), 19, "");
  expect_violation(missing, "missing field 'opcode'");

  expect_violation("[1, 2]", "JSON object");
}

TEST(WriteDump, EmptyVariantBundleRoundTrips) {
  const DumpBundle b = parse_dump(kOriginalOnly);
  EXPECT_EQ(parse_dump(write_dump(b)), b);
}

TEST(WriteDump, RejectsReservedDelimiterInPhaseName) {
  DumpBundle b = parse_dump(kOriginalOnly);
  b.original.phase_sequence[1].name = "Early@Optimization";
  for (auto& [_, n] : b.original.nodes) {
    for (auto& p : n.optimized_in) p.name = "Early@Optimization";
  }
  EXPECT_THROW(write_dump(b), ValidationError);
}

// Property: any generated family survives write -> parse unchanged, and the
// parser accepts only graphs the validator accepts.
TEST(WriteDump, RoundTripPropertyOverGeneratedBundles) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    DumpBundle b;
    testing::RandomGraphOptions o;
    o.max_nodes = 30;
    o.ir_ids = 1;
    b.original = testing::random_graph(rng, o);
    const int variants = trial % 5;
    for (int v = 1; v <= variants; ++v) {
      IRGraph g = testing::random_graph(rng, o);
      g.ir_id = v;
      for (auto& [_, n] : g.nodes) n.ir_id = v;
      b.variants.push_back(std::move(g));
    }
    b.metadata["trial"] = std::to_string(trial);
    const std::string text = write_dump(b);
    const DumpBundle back = parse_dump(text);
    ASSERT_EQ(back, b) << "trial " << trial;
    ASSERT_EQ(write_dump(back), text);
  }
}

TEST(ParseDump, ParserAgreesWithValidator) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    DumpBundle b;
    testing::RandomGraphOptions o;
    o.max_nodes = 12;
    o.ir_ids = 1;
    b.original = testing::random_graph(rng, o);
    // Corrupt half of the trials with a self-loop or a dangling edge.
    if (trial % 2 == 1 && !b.original.nodes.empty()) {
      const NodeId some = b.original.nodes.begin()->first;
      b.original.edges.push_back(trial % 4 == 1 ? Edge{some, some} : Edge{some, 1000});
    }
    const bool valid = validate_ir_graph(b.original).empty();
    bool accepted = true;
    try {
      parse_dump(write_dump(b));
    } catch (const ValidationError&) {
      accepted = false;
    }
    EXPECT_EQ(accepted, valid) << "trial " << trial;
  }
}

}  // namespace
}  // namespace irviz
