#include "irviz/pipeline.hpp"

#include <iomanip>
#include <sstream>

#include "irviz/graph_simplify.hpp"

namespace irviz {

namespace {

StageSummary graph_stage(std::string name, const IRGraph& g, bool skipped = false) {
  return {std::move(name), g.nodes.size(), g.edges.size(), 0, false, skipped};
}

StageSummary hyper_stage(std::string name, const Hypergraph& h, bool skipped = false) {
  return {std::move(name), h.nodes.size(), 0, h.hyperedges.size(), true, skipped};
}

}  // namespace

PipelineResult run_pipeline(const DumpBundle& bundle, const PipelineOptions& options) {
  PipelineResult r;
  r.merged = merge_candidates(bundle.original, bundle.variants);
  r.stages.push_back(graph_stage("merged IR", r.merged.graph));

  IRGraph g = r.merged.graph;
  if (options.dead_removal) g = remove_dead_nodes(g);
  r.stages.push_back(graph_stage("dead-node removal", g, !options.dead_removal));
  if (options.node_merge) g = merge_equivalent_nodes(g);
  r.stages.push_back(graph_stage("node merging", g, !options.node_merge));
  r.simplified = std::move(g);

  Hypergraph h = extract_hypergraph(r.simplified);
  r.stages.push_back(hyper_stage("hypergraph", h));
  if (options.hyperedge_merge) h = merge_same_name_hyperedges(h);
  r.stages.push_back(hyper_stage("same-name hyperedge merging", h, !options.hyperedge_merge));
  if (options.station_merge) h = merge_stations_by_opcode(h);
  r.stages.push_back(hyper_stage("station merging", h, !options.station_merge));
  r.hypergraph = std::move(h);

  r.report = suspicion_ranking(r.hypergraph, r.merged.diffs);
  r.map = layout_map(r.hypergraph, r.report);
  apply_palette(r.map, options.palette);
  return r;
}

std::string format_stage_summary(const std::vector<StageSummary>& stages) {
  std::ostringstream os;
  os << std::left << std::setw(30) << "stage" << std::right << std::setw(8) << "nodes"
     << std::setw(8) << "edges" << std::setw(12) << "hyperedges" << "\n";
  for (const auto& s : stages) {
    os << std::left << std::setw(30) << (s.skipped ? s.stage + " (skipped)" : s.stage) << std::right
       << std::setw(8) << s.nodes;
    if (!s.hypergraph_stage) {
      os << std::setw(8) << s.edges << std::setw(12) << "-";
    } else {
      os << std::setw(8) << "-" << std::setw(12) << s.hyperedges;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace irviz
