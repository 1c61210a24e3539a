#include "irviz/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <tuple>

namespace irviz {

std::vector<Ordinal> parse_hyperedge_id(std::string_view id) {
  std::vector<Ordinal> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = std::min(id.find(kIdDelimiter, pos), id.size());
    const std::string_view part = id.substr(pos, end - pos);
    Ordinal v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
      throw std::invalid_argument("malformed hyperedge id '" + std::string(id) + "'");
    }
    if (!out.empty() && v <= out.back()) {
      throw std::invalid_argument("hyperedge id '" + std::string(id) + "' is not increasing");
    }
    out.push_back(v);
    if (end == id.size()) break;
    pos = end + 1;
  }
  return out;
}

std::string format_hyperedge_id(const std::vector<Ordinal>& ordinals) {
  std::string out;
  for (std::size_t i = 0; i < ordinals.size(); ++i) {
    if (i) out += kIdDelimiter;
    out += std::to_string(ordinals[i]);
  }
  return out;
}

std::vector<Ordinal> Hyperedge::ordinals() const { return parse_hyperedge_id(id); }

Ordinal Hyperedge::first_ordinal() const { return ordinals().front(); }

const Hyperedge* Hypergraph::find(std::string_view name) const {
  for (const auto& e : hyperedges) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

Hypergraph extract_hypergraph(const IRGraph& g) {
  std::map<PhaseExecution, std::set<NodeId>, decltype([](const auto& x, const auto& y) {
             return std::tie(x.exec_ordinal, x.name) < std::tie(y.exec_ordinal, y.name);
           })>
      lines;
  Hypergraph h;
  for (const auto& [id, n] : g.nodes) {
    h.nodes.emplace(id, n);
    lines[n.generated_in].insert(id);
    for (const auto& p : n.optimized_in) lines[p].insert(id);
  }
  for (auto& [phase, members] : lines) {
    h.hyperedges.push_back(
        Hyperedge{std::to_string(phase.exec_ordinal), phase.name, std::move(members)});
  }
  return h;
}

Hypergraph merge_same_name_hyperedges(const Hypergraph& h) {
  Hypergraph out;
  out.nodes = h.nodes;
  std::map<std::string, std::size_t> slot;
  std::vector<std::vector<Ordinal>> ords;
  for (const auto& e : h.hyperedges) {
    auto [it, fresh] = slot.emplace(e.name, out.hyperedges.size());
    if (fresh) {
      out.hyperedges.push_back(Hyperedge{"", e.name, {}});
      ords.emplace_back();
    }
    Hyperedge& target = out.hyperedges[it->second];
    target.members.insert(e.members.begin(), e.members.end());
    auto parsed = e.ordinals();
    ords[it->second].insert(ords[it->second].end(), parsed.begin(), parsed.end());
  }
  for (std::size_t i = 0; i < out.hyperedges.size(); ++i) {
    auto& o = ords[i];
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end()), o.end());
    out.hyperedges[i].id = format_hyperedge_id(o);
  }
  return out;
}

namespace {

using StationKey = std::tuple<std::string, IrId, std::string, std::set<std::string>>;

StationKey station_key(const IRNode& n) {
  std::set<std::string> opt;
  for (const auto& p : n.optimized_in) opt.insert(p.name);
  return {n.opcode, n.ir_id, n.generated_in.name, std::move(opt)};
}

}  // namespace

Hypergraph merge_stations_by_opcode(const Hypergraph& h) {
  // The key is an equivalence relation, so one grouping pass is a fixpoint.
  std::map<StationKey, NodeId> survivor_of;
  std::map<NodeId, NodeId> redirect;
  Hypergraph out;
  for (const auto& [id, n] : h.nodes) {
    auto [it, fresh] = survivor_of.emplace(station_key(n), id);
    if (fresh) {
      out.nodes.emplace(id, n);
      continue;
    }
    IRNode& keep = out.nodes.at(it->second);
    keep.multiplicity += n.multiplicity;
    keep.merged_from.push_back(n.origin());
    keep.merged_from.insert(keep.merged_from.end(), n.merged_from.begin(), n.merged_from.end());
    redirect.emplace(id, it->second);
  }
  out.hyperedges.reserve(h.hyperedges.size());
  for (const auto& e : h.hyperedges) {
    Hyperedge ne{e.id, e.name, {}};
    for (NodeId m : e.members) {
      auto r = redirect.find(m);
      ne.members.insert(r == redirect.end() ? m : r->second);
    }
    out.hyperedges.push_back(std::move(ne));
  }
  return out;
}

std::vector<std::string> validate_hypergraph(const Hypergraph& h) {
  std::vector<std::string> out;
  std::map<NodeId, std::set<std::string>> lines_of;
  for (const auto& e : h.hyperedges) {
    try {
      parse_hyperedge_id(e.id);
    } catch (const std::invalid_argument& ex) {
      out.push_back(ex.what());
    }
    if (e.members.empty()) out.push_back("hyperedge '" + e.name + "' (" + e.id + ") is empty");
    for (NodeId m : e.members) {
      if (!h.nodes.contains(m)) {
        out.push_back("hyperedge '" + e.name + "' lists missing station " + std::to_string(m));
      }
      lines_of[m].insert(e.name);
    }
  }
  for (const auto& [id, n] : h.nodes) {
    const auto& have = lines_of[id];
    for (const auto& name : phase_names(n)) {
      if (!have.contains(name)) {
        out.push_back("station " + std::to_string(id) + " is missing from line '" + name + "'");
      }
    }
    if (n.multiplicity != 1 + n.merged_from.size()) {
      out.push_back("station " + std::to_string(id) + " has inconsistent multiplicity");
    }
  }
  return out;
}

}  // namespace irviz
