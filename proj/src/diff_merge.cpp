#include "irviz/diff_merge.hpp"

#include <algorithm>
#include <set>

namespace irviz {

std::string to_string(const NodeSignature& s) {
  std::string out = s.opcode + "[" + s.generated_phase + "]{";
  for (std::size_t i = 0; i < s.neighbor_opcodes.size(); ++i) {
    if (i) out += ",";
    out += s.neighbor_opcodes[i];
  }
  return out + "}";
}

namespace {

NodeSignature signature_from(const IRNode& n, const std::vector<NodeId>& neighbors,
                             const IRGraph& g) {
  NodeSignature s{n.opcode, n.generated_in.name, {}};
  s.neighbor_opcodes.reserve(neighbors.size());
  for (NodeId m : neighbors) s.neighbor_opcodes.push_back(g.node(m).opcode);
  std::sort(s.neighbor_opcodes.begin(), s.neighbor_opcodes.end());
  return s;
}

// phase name -> ascending ids of the nodes generated or optimized there
std::map<std::string, std::vector<NodeId>> members_by_phase_name(const IRGraph& g) {
  std::map<std::string, std::vector<NodeId>> out;
  for (const auto& [id, n] : g.nodes) {
    std::set<std::string> names;
    for (auto& name : phase_names(n)) names.insert(std::move(name));
    for (const auto& name : names) out[name].push_back(id);
  }
  return out;
}

using SignatureBuckets = std::map<NodeSignature, std::vector<NodeId>>;

SignatureBuckets bucket(const std::vector<NodeId>& ids,
                        const std::map<NodeId, NodeSignature>& sigs) {
  SignatureBuckets out;
  for (NodeId id : ids) out[sigs.at(id)].push_back(id);
  return out;
}

}  // namespace

NodeSignature node_signature(const IRNode& n, const IRGraph& g) {
  std::vector<NodeId> neighbors;
  for (const auto& e : g.edges) {
    if (e.a == n.node_id && e.b != n.node_id) neighbors.push_back(e.b);
    if (e.b == n.node_id && e.a != n.node_id) neighbors.push_back(e.a);
  }
  return signature_from(n, neighbors, g);
}

std::map<NodeId, NodeSignature> signatures(const IRGraph& g) {
  std::map<NodeId, NodeSignature> out;
  for (const auto& [id, ns] : adjacency(g)) out.emplace(id, signature_from(g.node(id), ns, g));
  return out;
}

std::vector<PhaseDiff> diff_variant(const IRGraph& r0, const IRGraph& ri) {
  const auto sig0 = signatures(r0);
  const auto sigi = signatures(ri);
  const auto phases0 = members_by_phase_name(r0);
  const auto phasesi = members_by_phase_name(ri);

  std::set<std::string> names;
  for (const auto& [name, _] : phases0) names.insert(name);
  for (const auto& [name, _] : phasesi) names.insert(name);

  static const std::vector<NodeId> kNone;
  auto members = [](const auto& phases, const std::string& name) -> const std::vector<NodeId>& {
    auto it = phases.find(name);
    return it == phases.end() ? kNone : it->second;
  };

  std::vector<PhaseDiff> diffs;
  for (const auto& name : names) {
    const SignatureBuckets base = bucket(members(phases0, name), sig0);
    const SignatureBuckets cand = bucket(members(phasesi, name), sigi);

    PhaseDiff d{name, ri.ir_id, {}, {}};
    for (const auto& [sig, ids] : cand) {
      auto it = base.find(sig);
      const std::size_t matched = it == base.end() ? 0 : std::min(ids.size(), it->second.size());
      d.added_nodes.insert(d.added_nodes.end(), ids.begin() + static_cast<std::ptrdiff_t>(matched),
                           ids.end());
    }
    for (const auto& [sig, ids] : base) {
      auto it = cand.find(sig);
      const std::size_t present = it == cand.end() ? 0 : it->second.size();
      for (std::size_t k = present; k < ids.size(); ++k) d.missing_signatures.push_back(sig);
    }
    if (d.added_nodes.empty() && d.missing_signatures.empty()) continue;
    std::sort(d.added_nodes.begin(), d.added_nodes.end());
    diffs.push_back(std::move(d));
  }
  return diffs;
}

std::vector<std::vector<PhaseDiff>> diff_variants_serial(const IRGraph& r0,
                                                         std::span<const IRGraph> variants) {
  std::vector<std::vector<PhaseDiff>> out;
  out.reserve(variants.size());
  for (const auto& v : variants) out.push_back(diff_variant(r0, v));
  return out;
}

std::vector<std::vector<PhaseDiff>> diff_variants(const IRGraph& r0,
                                                  std::span<const IRGraph> variants) {
  std::vector<std::vector<PhaseDiff>> out(variants.size());
  const auto n = static_cast<std::ptrdiff_t>(variants.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = diff_variant(r0, variants[static_cast<std::size_t>(i)]);
  }
  return out;
}

namespace {

// Maps a variant's phase executions onto the merged graph's sequence: the
// k-th execution of a name lands on the k-th same-named execution in R0
// (or its last one). Names R0 never ran are appended with fresh ordinals.
class PhaseAligner {
 public:
  PhaseAligner(IRGraph& merged, const std::set<std::string>& r0_names)
      : merged_(merged), r0_names_(r0_names) {
    for (const auto& p : merged_.phase_sequence) {
      by_name_[p.name].push_back(p);
      next_ordinal_ = std::max(next_ordinal_, p.exec_ordinal + 1);
    }
  }

  void begin_variant(const IRGraph& ri) {
    occurrence_.clear();
    std::vector<PhaseExecution> seq = ri.phase_sequence;
    std::sort(seq.begin(), seq.end(),
              [](const auto& x, const auto& y) { return x.exec_ordinal < y.exec_ordinal; });
    std::map<std::string, std::size_t> seen;
    for (const auto& p : seq) occurrence_[p] = seen[p.name]++;
  }

  PhaseExecution align(const PhaseExecution& p) {
    const std::size_t k = occurrence_.count(p) ? occurrence_.at(p) : 0;
    auto& list = by_name_[p.name];
    if (k < list.size()) return list[k];
    if (r0_names_.contains(p.name)) return list.back();
    PhaseExecution fresh{p.name, next_ordinal_++};
    merged_.phase_sequence.push_back(fresh);
    list.push_back(fresh);
    return fresh;
  }

 private:
  IRGraph& merged_;
  const std::set<std::string>& r0_names_;
  std::map<std::string, std::vector<PhaseExecution>> by_name_;
  std::map<PhaseExecution, std::size_t> occurrence_;
  Ordinal next_ordinal_ = 0;
};

}  // namespace

MergedIR merge_candidates(const IRGraph& r0, std::span<const IRGraph> variants) {
  std::vector<const IRGraph*> order;
  for (const auto& v : variants) order.push_back(&v);
  std::stable_sort(order.begin(), order.end(),
                   [](const IRGraph* x, const IRGraph* y) { return x->ir_id < y->ir_id; });

  std::vector<IRGraph> sorted;
  sorted.reserve(order.size());
  for (const IRGraph* v : order) sorted.push_back(*v);
  const auto all_diffs = diff_variants(r0, sorted);

  MergedIR out;
  out.graph = r0;
  for (const auto& [id, n] : r0.nodes) out.provenance.emplace(id, NodeOrigin{n.ir_id, id, n.address});

  std::set<std::string> r0_names;
  for (const auto& p : r0.phase_sequence) r0_names.insert(p.name);
  PhaseAligner aligner(out.graph, r0_names);

  NodeId next_id = r0.nodes.empty() ? 0 : r0.nodes.rbegin()->first + 1;
  const auto sig0 = signatures(r0);
  std::map<NodeSignature, std::vector<NodeId>> r0_by_sig;
  for (const auto& [id, s] : sig0) r0_by_sig[s].push_back(id);

  std::set<Edge> present(r0.edges.begin(), r0.edges.end());

  for (std::size_t vi = 0; vi < sorted.size(); ++vi) {
    const IRGraph& ri = sorted[vi];
    const auto& diffs = all_diffs[vi];
    out.diffs.insert(out.diffs.end(), diffs.begin(), diffs.end());

    std::set<NodeId> added;
    for (const auto& d : diffs) added.insert(d.added_nodes.begin(), d.added_nodes.end());
    if (added.empty()) continue;

    // Surviving variant nodes pair with R0 nodes of equal signature, in
    // ascending id order on both sides.
    std::map<NodeSignature, std::vector<NodeId>> kept_by_sig;
    for (const auto& [id, s] : signatures(ri)) {
      if (!added.contains(id)) kept_by_sig[s].push_back(id);
    }
    std::map<NodeId, NodeId> match;
    for (const auto& [s, ids] : kept_by_sig) {
      auto it = r0_by_sig.find(s);
      if (it == r0_by_sig.end()) continue;
      for (std::size_t k = 0; k < std::min(ids.size(), it->second.size()); ++k) {
        match.emplace(ids[k], it->second[k]);
      }
    }

    aligner.begin_variant(ri);
    std::map<NodeId, NodeId> fresh;
    for (NodeId id : added) {
      const IRNode& src = ri.node(id);
      IRNode n;
      n.node_id = next_id++;
      n.address = src.address;
      n.opcode = src.opcode;
      n.ir_id = src.ir_id;
      n.generated_in = aligner.align(src.generated_in);
      for (const auto& p : src.optimized_in) {
        PhaseExecution q = aligner.align(p);
        if (q == n.generated_in) continue;
        if (std::find(n.optimized_in.begin(), n.optimized_in.end(), q) != n.optimized_in.end()) {
          continue;
        }
        n.optimized_in.push_back(std::move(q));
      }
      fresh.emplace(id, n.node_id);
      out.provenance.emplace(n.node_id, NodeOrigin{ri.ir_id, id, src.address});
      out.graph.nodes.emplace(n.node_id, std::move(n));
    }

    for (const auto& e : ri.edges) {
      const bool a_added = added.contains(e.a);
      const bool b_added = added.contains(e.b);
      std::optional<Edge> ne;
      if (a_added && b_added) {
        ne = make_edge(fresh.at(e.a), fresh.at(e.b));
      } else if (a_added || b_added) {
        const NodeId inserted = a_added ? e.a : e.b;
        const NodeId other = a_added ? e.b : e.a;
        if (auto it = match.find(other); it != match.end()) {
          ne = make_edge(fresh.at(inserted), it->second);
        }
      }
      if (ne && present.insert(*ne).second) out.graph.edges.push_back(*ne);
    }
  }
  return out;
}

}  // namespace irviz
