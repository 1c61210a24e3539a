#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "irviz/analysis.hpp"
#include "irviz/diff_merge.hpp"
#include "irviz/hypergraph.hpp"
#include "irviz/ingest.hpp"
#include "irviz/layout.hpp"

namespace irviz {

struct PipelineOptions {
  bool dead_removal = true;
  bool node_merge = true;
  bool hyperedge_merge = true;
  bool station_merge = true;
  std::vector<std::int64_t> palette;
};

/// Size of the intermediate result after one stage. Graph stages fill
/// `edges`; hypergraph stages fill `hyperedges`.
struct StageSummary {
  std::string stage;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t hyperedges = 0;
  bool hypergraph_stage = false;
  bool skipped = false;
};

struct PipelineResult {
  MergedIR merged;
  IRGraph simplified;
  Hypergraph hypergraph;
  SuspicionReport report;
  MetroMap map;
  std::vector<StageSummary> stages;
};

/// merge -> dead-node removal -> node merging -> hypergraph extraction ->
/// same-name hyperedge merging -> station merging -> analysis -> layout.
PipelineResult run_pipeline(const DumpBundle& bundle, const PipelineOptions& options = {});

std::string format_stage_summary(const std::vector<StageSummary>& stages);

}  // namespace irviz
