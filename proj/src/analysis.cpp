#include "irviz/analysis.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json_io.hpp"

namespace irviz {

ActivePhase most_active_phase(const Hypergraph& h) {
  if (h.hyperedges.empty()) throw std::invalid_argument("no phases");
  const Hyperedge* best = nullptr;
  for (const auto& e : h.hyperedges) {
    if (!best || e.members.size() > best->members.size() ||
        (e.members.size() == best->members.size() && e.first_ordinal() < best->first_ordinal())) {
      best = &e;
    }
  }
  return {best->name, best->id, best->members.size()};
}

namespace {

std::size_t count_common(const std::vector<NodeId>& x, const std::vector<NodeId>& y) {
  std::size_t n = 0;
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

std::vector<std::vector<NodeId>> member_rows(const Hypergraph& h) {
  std::vector<std::vector<NodeId>> rows(h.hyperedges.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].assign(h.hyperedges[i].members.begin(), h.hyperedges[i].members.end());
  }
  return rows;
}

// Fills cells (i, j) and (j, i) for every j >= i.
void fill_row(const std::vector<std::vector<NodeId>>& rows, std::size_t i, PhaseMatrix& m) {
  for (std::size_t j = i; j < rows.size(); ++j) {
    const std::size_t c = count_common(rows[i], rows[j]);
    m.at(i, j) = c;
    m.at(j, i) = c;
  }
}

}  // namespace

PhaseMatrix phase_relationships(const Hypergraph& h) {
  const auto rows = member_rows(h);
  PhaseMatrix m(rows.size());
  const auto n = static_cast<std::ptrdiff_t>(rows.size());
  // Rows own disjoint cells, so writes never overlap.
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) fill_row(rows, static_cast<std::size_t>(i), m);
  return m;
}

PhaseMatrix phase_relationships_serial(const Hypergraph& h) {
  const auto rows = member_rows(h);
  PhaseMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) fill_row(rows, i, m);
  return m;
}

NodePhases phases_of_node(const Hypergraph& h, NodeId station) {
  auto it = h.nodes.find(station);
  if (it == h.nodes.end()) {
    throw std::out_of_range("unknown station " + std::to_string(station));
  }
  std::vector<PhaseExecution> opt = it->second.optimized_in;
  std::stable_sort(opt.begin(), opt.end(),
                   [](const auto& x, const auto& y) { return x.exec_ordinal < y.exec_ordinal; });
  NodePhases out{it->second.generated_in.name, {}};
  for (const auto& p : opt) out.optimized.push_back(p.name);
  return out;
}

SuspicionReport suspicion_ranking(const Hypergraph& h, const std::vector<PhaseDiff>& diffs) {
  SuspicionReport r;
  for (const auto& e : h.hyperedges) {
    LineSuspicion s{e.name, e.id, 0, 0, {}};
    for (NodeId m : e.members) {
      const IRNode& n = h.nodes.at(m);
      s.member_count += n.multiplicity;
      if (n.ir_id != 0) s.non_original_count += n.multiplicity;
    }
    s.suspicion = s.member_count == 0 ? Ratio{0, 1} : Ratio{s.non_original_count, s.member_count};
    r.lines.push_back(std::move(s));
  }
  std::stable_sort(r.lines.begin(), r.lines.end(), [](const auto& x, const auto& y) {
    if (y.suspicion < x.suspicion) return true;
    if (x.suspicion < y.suspicion) return false;
    return x.name < y.name;
  });
  for (const auto& d : diffs) {
    if (d.missing_signatures.empty()) continue;
    r.missing.push_back({d.phase_name, d.variant_ir_id, d.missing_signatures});
  }
  return r;
}

namespace detail {

Json report_json(const SuspicionReport& r) {
  Json lines = Json::array();
  for (const auto& l : r.lines) {
    Json j;
    j["name"] = l.name;
    j["id"] = l.id;
    j["member_count"] = l.member_count;
    j["non_original_count"] = l.non_original_count;
    j["suspicion"] = l.suspicion.value();
    j["suspicion_exact"] = std::to_string(l.suspicion.num) + "/" + std::to_string(l.suspicion.den);
    lines.push_back(std::move(j));
  }
  Json missing = Json::array();
  for (const auto& m : r.missing) {
    Json j;
    j["phase"] = m.phase_name;
    j["variant_ir_id"] = m.variant_ir_id;
    Json sigs = Json::array();
    for (const auto& s : m.signatures) sigs.push_back(to_string(s));
    j["signatures"] = std::move(sigs);
    missing.push_back(std::move(j));
  }
  Json out;
  out["lines"] = std::move(lines);
  out["missing_optimizations"] = std::move(missing);
  return out;
}

}  // namespace detail

std::string report_to_json(const SuspicionReport& r) { return detail::report_json(r).dump(2) + "\n"; }

std::string report_to_text(const SuspicionReport& r) {
  std::size_t width = 5;
  for (const auto& l : r.lines) width = std::max(width, l.name.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width)) << "phase" << "  " << std::setw(12) << "id"
     << std::right << std::setw(8) << "members" << std::setw(10) << "foreign" << std::setw(11)
     << "suspicion" << "\n";
  for (const auto& l : r.lines) {
    std::string id = l.id.size() > 12 ? l.id.substr(0, 11) + "~" : l.id;
    os << std::left << std::setw(static_cast<int>(width)) << l.name << "  " << std::setw(12) << id
       << std::right << std::setw(8) << l.member_count << std::setw(10) << l.non_original_count
       << std::setw(11) << std::fixed << std::setprecision(3) << l.suspicion.value() << "\n";
  }
  if (!r.missing.empty()) {
    os << "\nmissing optimizations:\n";
    for (const auto& m : r.missing) {
      os << "  " << m.phase_name << " in IR " << m.variant_ir_id << ": ";
      for (std::size_t i = 0; i < m.signatures.size(); ++i) {
        if (i) os << ", ";
        os << to_string(m.signatures[i]);
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace irviz
