#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irviz/analysis.hpp"
#include "irviz/hypergraph.hpp"

namespace irviz {

/// The five hover attributes of a station.
struct StationAttributes {
  std::string phase;  // generating phase name
  std::string opcode;
  std::string address;
  IrId graph_id = 0;
  std::string phase_id;  // generating exec ordinal

  friend bool operator==(const StationAttributes&, const StationAttributes&) = default;
};

struct Station {
  NodeId station_id = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::string label;
  StationAttributes attributes;
  std::uint32_t multiplicity = 1;
  std::vector<std::string> optimized_in;  // names, execution order
  std::vector<NodeOrigin> merged_from;

  friend bool operator==(const Station&, const Station&) = default;
};

struct MetroLine {
  std::string name;
  std::string id;
  std::int64_t color_index = 0;
  std::vector<NodeId> polyline;

  friend bool operator==(const MetroLine&, const MetroLine&) = default;
};

struct MetroMap {
  std::vector<Station> stations;
  std::vector<MetroLine> lines;
  SuspicionReport report;
};

/// Generation-timeline order: ascending (generating exec ordinal, node id).
std::vector<NodeId> order_stations(const Hypergraph& h, const std::set<NodeId>& members);

/// Deterministic grid schematic. Lines get home rows 0, 2, 4, ... in order
/// of first ordinal; stations get columns 0, 2, 4, ... in timeline order.
/// A station on several lines sits on the lower median of their home rows.
/// Throws std::invalid_argument on an empty hypergraph.
MetroMap layout_map(const Hypergraph& h, const SuspicionReport& report);

/// Replaces line colors with palette[i % palette.size()]; no-op when empty.
void apply_palette(MetroMap& map, const std::vector<std::int64_t>& palette);

/// Empty iff stations have distinct positions, every line visits each of
/// its members exactly once, and every station is on some line.
std::vector<std::string> validate_metro_map(const MetroMap& map, const Hypergraph& h);

std::string metro_map_to_json(const MetroMap& map);

}  // namespace irviz
