#include "irviz/synth.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "json_io.hpp"

namespace irviz {

const std::vector<std::string>& synth_phase_names() {
  static const std::vector<std::string> names = {
      "BytecodeGraphBuilder", "Inlining",          "EarlyGraphTrimming",
      "Typer",                "TypedLowering",     "LoopPeeling",
      "LoadElimination",      "EscapeAnalysis",    "SimplifiedLowering",
      "GenericLowering",      "EarlyOptimization", "EffectLinearization",
      "DeadCodeElimination",  "StoreStoreElimination", "ControlFlowOptimization",
      "MemoryOptimization",   "LateOptimization",  "MachineOperatorOptimization",
      "LateGraphTrimming",    "Scheduling",
  };
  return names;
}

const std::vector<std::string>& synth_opcodes() {
  static const std::vector<std::string> ops = {
      "start",        "end",         "parameter",  "constant",    "numberconstant",
      "heapconstant", "phi",         "effectphi",  "merge",       "loop",
      "branch",       "iftrue",      "iffalse",    "return",      "call",
      "checkpoint",   "checkbounds", "checkmaps",  "loadfield",   "storefield",
      "loadelement",  "storeelement", "numberadd", "speculativenumberadd", "frameState",
  };
  return ops;
}

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(engine_);
  }
  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  std::uint64_t raw() { return engine_(); }
  std::size_t weighted(const std::vector<double>& w) {
    return std::discrete_distribution<std::size_t>(w.begin(), w.end())(engine_);
  }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[between(0, v.size() - 1)];
  }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), engine_);
  }

 private:
  std::mt19937_64 engine_;
};

// Lowering, inlining and linearization passes rewrite far more of the graph
// than the reducer-style phases.
double phase_activity(const std::string& name) {
  static const std::set<std::string> heavy = {"Inlining",          "TypedLowering",
                                              "SimplifiedLowering", "GenericLowering",
                                              "EffectLinearization", "MemoryOptimization"};
  return heavy.contains(name) ? 4.0 : 1.0;
}

// Weighted pick among seq[lo..hi].
Ordinal pick_execution(Rng& rng, const std::vector<PhaseExecution>& seq, Ordinal lo, Ordinal hi) {
  std::vector<double> w;
  for (Ordinal o = lo; o <= hi; ++o) w.push_back(phase_activity(seq[o].name));
  return lo + static_cast<Ordinal>(rng.weighted(w));
}

std::string hex_address(std::uint64_t v) {
  std::ostringstream os;
  os << "0x" << std::hex << v;
  return os.str();
}

void check_range(const char* what, std::uint32_t lo, std::uint32_t hi) {
  if (lo < 1 || hi > 10000 || lo > hi) {
    throw SynthSpecError(std::string(what) + " range must satisfy 1 <= min <= max <= 10000");
  }
}

std::vector<PhaseExecution> make_phase_sequence(Rng& rng, std::uint32_t count,
                                                const std::string& buggy) {
  const auto& all = synth_phase_names();
  std::vector<std::string> later(all.begin() + 1, all.end());
  std::vector<std::string> names{all.front()};
  const std::size_t rest = count - 1;
  if (rest <= later.size()) {
    // Ordered subset of the pipeline that keeps the buggy phase.
    std::vector<std::size_t> idx(later.size());
    std::iota(idx.begin(), idx.end(), 0);
    rng.shuffle(idx);
    idx.resize(rest);
    const auto it = std::find(later.begin(), later.end(), buggy);
    if (it != later.end() && rest > 0) {
      const auto b = static_cast<std::size_t>(it - later.begin());
      if (std::find(idx.begin(), idx.end(), b) == idx.end()) idx[0] = b;
    }
    std::sort(idx.begin(), idx.end());
    for (std::size_t i : idx) names.push_back(later[i]);
  } else {
    std::vector<std::string> seq = later;
    for (std::size_t k = later.size(); k < rest; ++k) {
      const auto pos = static_cast<std::ptrdiff_t>(rng.between(0, seq.size()));
      seq.insert(seq.begin() + pos, rng.pick(later));
    }
    names.insert(names.end(), seq.begin(), seq.end());
  }
  std::vector<PhaseExecution> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    out.push_back(PhaseExecution{names[i], static_cast<Ordinal>(i)});
  }
  return out;
}

IRGraph make_original(Rng& rng, const SynthSpec& spec) {
  IRGraph g;
  g.ir_id = 0;
  const auto n = static_cast<NodeId>(rng.between(spec.nodes_min, spec.nodes_max));
  const auto m = static_cast<std::uint32_t>(rng.between(spec.phases_min, spec.phases_max));
  g.phase_sequence = make_phase_sequence(rng, m, spec.buggy_phase);
  const auto& seq = g.phase_sequence;

  std::vector<Ordinal> buggy_runs;
  for (const auto& p : seq) {
    if (p.name == spec.buggy_phase) buggy_runs.push_back(p.exec_ordinal);
  }

  const std::uint64_t base = 0x55d000000000ULL + (rng.raw() & 0xffffff0ULL);
  for (NodeId id = 0; id < n; ++id) {
    IRNode node;
    node.node_id = id;
    node.address = hex_address(base + 0x38ULL * id);
    node.opcode = rng.pick(synth_opcodes());
    node.ir_id = 0;
    // Most nodes come from graph building; the rest trickle in from later phases.
    const Ordinal gen = (m == 1 || rng.unit() < 0.65) ? 0 : pick_execution(rng, seq, 1, m - 1);
    node.generated_in = seq[gen];
    const double r = rng.unit();
    const std::size_t n_opt = r < 0.75 ? 0 : (r < 0.95 ? 1 : 2);
    std::set<Ordinal> opt;
    for (std::size_t k = 0; k < n_opt && gen + 1 < m; ++k) {
      opt.insert(pick_execution(rng, seq, gen + 1, m - 1));
    }
    for (Ordinal o : opt) node.optimized_in.push_back(seq[o]);
    g.nodes.emplace(id, std::move(node));
  }

  // The buggy phase always generates a few nodes so that removal has targets.
  std::size_t in_buggy = 0;
  for (const auto& [_, node] : g.nodes) in_buggy += node.generated_in.name == spec.buggy_phase;
  for (NodeId id = 0; id < n && in_buggy < 3 && !buggy_runs.empty(); ++id) {
    IRNode& node = g.nodes.at(id);
    if (node.generated_in.name == spec.buggy_phase) continue;
    node.generated_in = seq[rng.pick(buggy_runs)];
    std::erase(node.optimized_in, node.generated_in);
    ++in_buggy;
  }

  // Each node hangs off one or two earlier nodes; a few are left dead.
  std::vector<bool> dead(n, false);
  std::set<Edge> edges;
  for (NodeId id = 1; id < n; ++id) {
    if (rng.unit() < 0.02) {
      dead[id] = true;
      continue;
    }
    const std::size_t fanin = rng.unit() < 0.5 ? 1 : 2;
    for (std::size_t k = 0; k < fanin; ++k) {
      NodeId to = static_cast<NodeId>(rng.between(0, id - 1));
      while (dead[to]) to = static_cast<NodeId>(rng.between(0, id - 1));
      edges.insert(make_edge(id, to));
    }
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

struct Renumbered {
  IRGraph graph;
  std::map<NodeId, NodeId> id_of;  // R0 id -> variant id
};

Renumbered renumber(Rng& rng, const IRGraph& r0, IrId ir_id) {
  std::vector<NodeId> perm;
  for (const auto& [id, _] : r0.nodes) perm.push_back(id);
  std::vector<NodeId> shuffled = perm;
  rng.shuffle(shuffled);
  std::map<NodeId, NodeId> to;
  for (std::size_t i = 0; i < perm.size(); ++i) to.emplace(perm[i], shuffled[i]);

  const std::uint64_t base = 0x7f0000000000ULL + (rng.raw() & 0xffffff0ULL);
  IRGraph g;
  g.ir_id = ir_id;
  g.phase_sequence = r0.phase_sequence;
  for (const auto& [id, n] : r0.nodes) {
    IRNode copy = n;
    copy.node_id = to.at(id);
    copy.ir_id = ir_id;
    copy.address = hex_address(base + 0x28ULL * copy.node_id);
    g.nodes.emplace(copy.node_id, std::move(copy));
  }
  std::set<Edge> edges;
  for (const auto& e : r0.edges) edges.insert(make_edge(to.at(e.a), to.at(e.b)));
  g.edges.assign(edges.begin(), edges.end());
  return {std::move(g), std::move(to)};
}

}  // namespace

SynthResult generate_bundle(std::uint64_t seed, const SynthSpec& spec) {
  check_range("nodes", spec.nodes_min, spec.nodes_max);
  check_range("phases", spec.phases_min, spec.phases_max);
  if (spec.n_variants > 10000) throw SynthSpecError("at most 10000 variants");
  if (spec.n_buggy_variants > spec.n_variants) {
    throw SynthSpecError("more buggy variants than variants");
  }
  const auto& names = synth_phase_names();
  if (std::find(names.begin(), names.end(), spec.buggy_phase) == names.end()) {
    throw SynthSpecError("unknown buggy phase '" + spec.buggy_phase + "'");
  }

  Rng rng(seed);
  SynthResult out;
  out.bundle.original = make_original(rng, spec);
  const IRGraph& r0 = out.bundle.original;
  out.bundle.metadata = {
      {"generator", "irviz synth"},
      {"seed", std::to_string(seed)},
      {"program", "synthetic"},
  };
  out.truth.buggy_phase = spec.buggy_phase;
  out.truth.injection = spec.injection;

  std::vector<IrId> ids(spec.n_variants);
  std::iota(ids.begin(), ids.end(), 1);
  std::vector<IrId> shuffled = ids;
  rng.shuffle(shuffled);
  const std::set<IrId> buggy(shuffled.begin(), shuffled.begin() + spec.n_buggy_variants);

  std::vector<PhaseExecution> buggy_runs;
  for (const auto& p : r0.phase_sequence) {
    if (p.name == spec.buggy_phase) buggy_runs.push_back(p);
  }
  if (buggy_runs.empty() && spec.n_buggy_variants > 0) {
    throw SynthSpecError("buggy phase '" + spec.buggy_phase + "' is never executed; allow more phases");
  }

  for (IrId v : ids) {
    auto [g, id_of] = renumber(rng, r0, v);
    VariantTruth truth{v, buggy.contains(v), {}, {}};
    if (truth.buggy && spec.injection == Injection::kAdded) {
      // Splice a chain of k same-opcode nodes into an edge whose endpoints
      // share that opcode: both endpoints keep their neighbor-opcode
      // multisets, so only the chain itself differs from R0.
      std::vector<std::size_t> spliceable;
      for (std::size_t i = 0; i < g.edges.size(); ++i) {
        if (g.node(g.edges[i].a).opcode == g.node(g.edges[i].b).opcode) spliceable.push_back(i);
      }
      const auto k = static_cast<NodeId>(rng.between(1, 3));
      const auto first = static_cast<NodeId>(g.nodes.rbegin()->first + 1);
      const std::uint64_t base = 0x7f8000000000ULL + (rng.raw() & 0xffff0ULL);
      std::optional<Edge> host;
      std::string opcode;
      if (spliceable.empty()) {
        opcode = rng.pick(synth_opcodes());
      } else {
        const std::size_t at = rng.pick(spliceable);
        host = g.edges[at];
        opcode = g.node(host->a).opcode;
        g.edges.erase(g.edges.begin() + static_cast<std::ptrdiff_t>(at));
      }
      for (NodeId j = 0; j < k; ++j) {
        IRNode n;
        n.node_id = first + j;
        n.address = hex_address(base + 0x28ULL * j);
        n.opcode = opcode;
        n.ir_id = v;
        n.generated_in = rng.pick(buggy_runs);
        g.nodes.emplace(n.node_id, std::move(n));
        truth.injected.push_back(first + j);
        if (j > 0) g.edges.push_back(Edge{first + j - 1, first + j});
      }
      if (host) {
        g.edges.push_back(make_edge(host->a, first));
        g.edges.push_back(make_edge(host->b, first + k - 1));
      }
    } else if (truth.buggy) {
      std::vector<NodeId> candidates;
      for (const auto& [id, n] : r0.nodes) {
        if (n.generated_in.name == spec.buggy_phase) candidates.push_back(id);
      }
      rng.shuffle(candidates);
      candidates.resize(std::min<std::size_t>(candidates.size(), rng.between(1, 3)));
      std::sort(candidates.begin(), candidates.end());
      truth.removed = candidates;
      std::set<NodeId> gone;
      for (NodeId c : candidates) gone.insert(id_of.at(c));
      std::erase_if(g.nodes, [&](const auto& kv) { return gone.contains(kv.first); });
      std::erase_if(g.edges, [&](const Edge& e) { return gone.contains(e.a) || gone.contains(e.b); });
    }
    out.bundle.variants.push_back(std::move(g));
    out.truth.variants.push_back(std::move(truth));
  }
  return out;
}

std::string ground_truth_to_json(const GroundTruth& t) {
  using detail::Json;
  Json doc;
  doc["buggy_phase"] = t.buggy_phase;
  doc["injection"] = t.injection == Injection::kAdded ? "added" : "removed";
  Json vs = Json::array();
  for (const auto& v : t.variants) {
    Json j;
    j["ir_id"] = v.ir_id;
    j["buggy"] = v.buggy;
    j["injected"] = v.injected;
    j["removed"] = v.removed;
    vs.push_back(std::move(j));
  }
  doc["variants"] = std::move(vs);
  return doc.dump(1) + "\n";
}

}  // namespace irviz
