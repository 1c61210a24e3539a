#include "irviz/layout.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "json_io.hpp"

namespace irviz {

std::vector<NodeId> order_stations(const Hypergraph& h, const std::set<NodeId>& members) {
  std::vector<NodeId> out(members.begin(), members.end());
  std::sort(out.begin(), out.end(), [&](NodeId x, NodeId y) {
    const Ordinal ox = h.nodes.at(x).generated_in.exec_ordinal;
    const Ordinal oy = h.nodes.at(y).generated_in.exec_ordinal;
    return ox != oy ? ox < oy : x < y;
  });
  return out;
}

MetroMap layout_map(const Hypergraph& h, const SuspicionReport& report) {
  if (h.hyperedges.empty() || h.nodes.empty()) {
    throw std::invalid_argument("cannot lay out an empty hypergraph");
  }
  MetroMap map;
  map.report = report;

  std::vector<const Hyperedge*> lines;
  for (const auto& e : h.hyperedges) lines.push_back(&e);
  std::stable_sort(lines.begin(), lines.end(), [](const Hyperedge* a, const Hyperedge* b) {
    return a->first_ordinal() < b->first_ordinal();
  });

  std::map<NodeId, std::vector<std::int64_t>> rows_of;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto row = static_cast<std::int64_t>(2 * k);
    for (NodeId m : lines[k]->members) rows_of[m].push_back(row);
    map.lines.push_back(MetroLine{lines[k]->name, lines[k]->id, static_cast<std::int64_t>(k),
                                  order_stations(h, lines[k]->members)});
  }

  std::set<NodeId> all;
  for (const auto& [id, _] : h.nodes) all.insert(id);
  const auto timeline = order_stations(h, all);

  std::set<std::pair<std::int64_t, std::int64_t>> occupied;
  for (std::size_t rank = 0; rank < timeline.size(); ++rank) {
    const IRNode& n = h.nodes.at(timeline[rank]);
    Station s;
    s.station_id = n.node_id;
    s.x = static_cast<std::int64_t>(2 * rank);
    auto rows = rows_of[n.node_id];  // already ascending
    s.y = rows.empty() ? 0 : rows[(rows.size() - 1) / 2];
    while (!occupied.emplace(s.x, s.y).second) ++s.y;
    s.label = std::to_string(n.node_id);
    s.attributes = {n.generated_in.name, n.opcode, n.address, n.ir_id,
                    std::to_string(n.generated_in.exec_ordinal)};
    s.multiplicity = n.multiplicity;
    auto opt = n.optimized_in;
    std::stable_sort(opt.begin(), opt.end(),
                     [](const auto& a, const auto& b) { return a.exec_ordinal < b.exec_ordinal; });
    for (const auto& p : opt) s.optimized_in.push_back(p.name);
    s.merged_from = n.merged_from;
    map.stations.push_back(std::move(s));
  }
  return map;
}

void apply_palette(MetroMap& map, const std::vector<std::int64_t>& palette) {
  if (palette.empty()) return;
  for (std::size_t i = 0; i < map.lines.size(); ++i) {
    map.lines[i].color_index = palette[i % palette.size()];
  }
}

std::vector<std::string> validate_metro_map(const MetroMap& map, const Hypergraph& h) {
  std::vector<std::string> out;
  std::set<std::pair<std::int64_t, std::int64_t>> positions;
  std::set<NodeId> stations;
  for (const auto& s : map.stations) {
    if (!positions.emplace(s.x, s.y).second) {
      out.push_back("station " + s.label + " shares position (" + std::to_string(s.x) + "," +
                    std::to_string(s.y) + ")");
    }
    stations.insert(s.station_id);
  }
  std::set<NodeId> on_some_line;
  for (const auto& line : map.lines) {
    const auto it = std::find_if(h.hyperedges.begin(), h.hyperedges.end(), [&](const Hyperedge& x) {
      return x.name == line.name && x.id == line.id;
    });
    const Hyperedge* e = it == h.hyperedges.end() ? nullptr : &*it;
    if (!e) {
      out.push_back("line '" + line.name + "' has no hyperedge");
      continue;
    }
    std::vector<NodeId> visited = line.polyline;
    std::sort(visited.begin(), visited.end());
    if (!std::equal(visited.begin(), visited.end(), e->members.begin(), e->members.end())) {
      out.push_back("line '" + line.name + "' does not visit each member exactly once");
    }
    for (NodeId v : line.polyline) {
      if (!stations.contains(v)) {
        out.push_back("line '" + line.name + "' visits unknown station " + std::to_string(v));
      }
      on_some_line.insert(v);
    }
  }
  for (NodeId s : stations) {
    if (!on_some_line.contains(s)) out.push_back("station " + std::to_string(s) + " is on no line");
  }
  return out;
}

std::string metro_map_to_json(const MetroMap& map) {
  using detail::Json;
  Json stations = Json::array();
  for (const auto& s : map.stations) {
    Json js;
    js["station_id"] = s.station_id;
    js["x"] = s.x;
    js["y"] = s.y;
    js["label"] = s.label;
    Json attrs;
    attrs["phase"] = s.attributes.phase;
    attrs["opcode"] = s.attributes.opcode;
    attrs["address"] = s.attributes.address;
    attrs["graph_id"] = s.attributes.graph_id;
    attrs["phase_id"] = s.attributes.phase_id;
    js["attributes"] = std::move(attrs);
    js["multiplicity"] = s.multiplicity;
    js["optimized_in"] = s.optimized_in;
    Json merged = Json::array();
    for (const auto& o : s.merged_from) {
      Json jo;
      jo["ir_id"] = o.ir_id;
      jo["node_id"] = o.node_id;
      jo["address"] = o.address;
      merged.push_back(std::move(jo));
    }
    js["merged_from"] = std::move(merged);
    stations.push_back(std::move(js));
  }
  Json lines = Json::array();
  for (const auto& l : map.lines) {
    Json jl;
    jl["name"] = l.name;
    jl["id"] = l.id;
    jl["color_index"] = l.color_index;
    jl["polyline"] = l.polyline;
    lines.push_back(std::move(jl));
  }
  Json doc;
  doc["stations"] = std::move(stations);
  doc["lines"] = std::move(lines);
  doc["report"] = detail::report_json(map.report);
  return doc.dump(1) + "\n";
}

}  // namespace irviz
