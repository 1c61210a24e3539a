#include "irviz/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace irviz {

using Json = nlohmann::ordered_json;

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : DumpError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                what),
      line_(line),
      column_(column) {}

namespace {

std::string join_violations(const std::vector<std::string>& v) {
  std::string s = std::to_string(v.size()) + " violation(s)";
  for (const auto& x : v) s += "\n  " + x;
  return s;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : DumpError(join_violations(violations)), violations_(std::move(violations)) {}

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Collects shape problems instead of throwing on the first one so that
// `irviz validate` can list everything wrong with a file.
class GraphReader {
 public:
  explicit GraphReader(std::vector<std::string>& problems) : problems_(problems) {}

  template <typename T>
  bool field(const Json& obj, const char* key, const std::string& where, T& out) {
    if (!obj.is_object() || !obj.contains(key)) {
      problems_.push_back(where + ": missing field '" + key + "'");
      return false;
    }
    try {
      out = obj.at(key).get<T>();
      return true;
    } catch (const nlohmann::json::exception&) {
      problems_.push_back(where + ": field '" + key + "' has the wrong type");
      return false;
    }
  }

  bool array_field(const Json& obj, const char* key, const std::string& where, const Json*& out) {
    if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_array()) {
      problems_.push_back(where + ": field '" + key + "' must be an array");
      return false;
    }
    out = &obj.at(key);
    return true;
  }

  std::optional<IRGraph> read(const Json& jg, std::size_t index) {
    const std::string where = "graphs[" + std::to_string(index) + "]";
    const std::size_t before = problems_.size();
    IRGraph g;
    field(jg, "ir_id", where, g.ir_id);
    const std::string gname = "graph ir_id " + std::to_string(g.ir_id);

    const Json* phases = nullptr;
    std::map<Ordinal, PhaseExecution> by_ordinal;
    if (array_field(jg, "phase_sequence", where, phases)) {
      for (std::size_t i = 0; i < phases->size(); ++i) {
        const std::string pw = where + ".phase_sequence[" + std::to_string(i) + "]";
        PhaseExecution p;
        if (!field((*phases)[i], "name", pw, p.name) ||
            !field((*phases)[i], "exec_ordinal", pw, p.exec_ordinal)) {
          continue;
        }
        if (p.name.find(kIdDelimiter) != std::string::npos) {
          problems_.push_back(gname + ": phase name '" + p.name + "' contains reserved '@'");
        }
        by_ordinal.emplace(p.exec_ordinal, p);
        g.phase_sequence.push_back(std::move(p));
      }
    }

    auto resolve = [&](Ordinal ord, const std::string& who) -> std::optional<PhaseExecution> {
      auto it = by_ordinal.find(ord);
      if (it == by_ordinal.end()) {
        problems_.push_back(gname + ": " + who + " references unknown phase ordinal " +
                            std::to_string(ord));
        return std::nullopt;
      }
      return it->second;
    };

    const Json* nodes = nullptr;
    if (array_field(jg, "nodes", where, nodes)) {
      for (std::size_t i = 0; i < nodes->size(); ++i) {
        const Json& jn = (*nodes)[i];
        const std::string nw = where + ".nodes[" + std::to_string(i) + "]";
        IRNode n;
        n.ir_id = g.ir_id;
        Ordinal gen = 0;
        std::vector<Ordinal> opt;
        bool ok = field(jn, "node_id", nw, n.node_id);
        ok = field(jn, "address", nw, n.address) && ok;
        ok = field(jn, "opcode", nw, n.opcode) && ok;
        ok = field(jn, "generated_in", nw, gen) && ok;
        ok = field(jn, "optimized_in", nw, opt) && ok;
        if (!ok) continue;
        const std::string who = "node " + std::to_string(n.node_id);
        if (auto p = resolve(gen, who)) n.generated_in = *p;
        for (Ordinal o : opt) {
          if (auto p = resolve(o, who)) n.optimized_in.push_back(*p);
        }
        if (g.nodes.contains(n.node_id)) {
          problems_.push_back(gname + ": duplicate node_id " + std::to_string(n.node_id));
          continue;
        }
        g.nodes.emplace(n.node_id, std::move(n));
      }
    }

    const Json* edges = nullptr;
    if (array_field(jg, "edges", where, edges)) {
      for (std::size_t i = 0; i < edges->size(); ++i) {
        const Json& je = (*edges)[i];
        if (!je.is_array() || je.size() != 2 || !je[0].is_number_unsigned() ||
            !je[1].is_number_unsigned()) {
          problems_.push_back(where + ".edges[" + std::to_string(i) +
                              "]: edge must be a pair of node ids");
          continue;
        }
        g.edges.push_back(Edge{je[0].get<NodeId>(), je[1].get<NodeId>()});
      }
    }

    if (problems_.size() != before) return std::nullopt;
    for (auto& v : validate_ir_graph(g)) problems_.push_back(gname + ": " + v);
    if (problems_.size() != before) return std::nullopt;
    return g;
  }

 private:
  std::vector<std::string>& problems_;
};

Json phase_json(const PhaseExecution& p) {
  Json j;
  j["name"] = p.name;
  j["exec_ordinal"] = p.exec_ordinal;
  return j;
}

Json graph_json(const IRGraph& g) {
  Json jg;
  jg["ir_id"] = g.ir_id;
  Json phases = Json::array();
  for (const auto& p : g.phase_sequence) phases.push_back(phase_json(p));
  jg["phase_sequence"] = std::move(phases);
  Json nodes = Json::array();
  for (const auto& [id, n] : g.nodes) {
    Json jn;
    jn["node_id"] = n.node_id;
    jn["address"] = n.address;
    jn["opcode"] = n.opcode;
    jn["generated_in"] = n.generated_in.exec_ordinal;
    Json opt = Json::array();
    for (const auto& p : n.optimized_in) opt.push_back(p.exec_ordinal);
    jn["optimized_in"] = std::move(opt);
    nodes.push_back(std::move(jn));
  }
  jg["nodes"] = std::move(nodes);
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back(Json::array({e.a, e.b}));
  jg["edges"] = std::move(edges);
  return jg;
}

}  // namespace

DumpBundle parse_dump(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] parse error at ..." prefix noise.
    if (auto pos = msg.find(": "); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw ParseError(msg, line, col);
  }

  std::vector<std::string> problems;
  if (!doc.is_object()) throw ValidationError({"document must be a JSON object"});

  DumpBundle bundle;
  if (doc.contains("metadata")) {
    const Json& meta = doc.at("metadata");
    if (!meta.is_object()) {
      problems.push_back("metadata must be an object");
    } else {
      for (const auto& [k, v] : meta.items()) {
        if (v.is_string()) {
          bundle.metadata[k] = v.get<std::string>();
        } else {
          problems.push_back("metadata value for '" + k + "' must be a string");
        }
      }
    }
  }

  if (!doc.contains("graphs") || !doc.at("graphs").is_array()) {
    problems.push_back("field 'graphs' must be an array");
    throw ValidationError(std::move(problems));
  }

  GraphReader reader(problems);
  std::set<IrId> ids;
  bool have_original = false;
  const Json& graphs = doc.at("graphs");
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    auto g = reader.read(graphs[i], i);
    if (!g) continue;
    if (!ids.insert(g->ir_id).second) {
      problems.push_back("duplicate ir_id " + std::to_string(g->ir_id));
      continue;
    }
    if (g->ir_id == 0) {
      have_original = true;
      bundle.original = std::move(*g);
    } else {
      bundle.variants.push_back(std::move(*g));
    }
  }
  if (!have_original && problems.empty()) {
    problems.push_back("no graph with ir_id 0 (the original program's IR)");
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return bundle;
}

std::string write_dump(const DumpBundle& bundle) {
  std::vector<std::string> problems;
  auto check = [&](const IRGraph& g) {
    for (const auto& p : g.phase_sequence) {
      if (p.name.find(kIdDelimiter) != std::string::npos) {
        problems.push_back("graph ir_id " + std::to_string(g.ir_id) + ": phase name '" + p.name +
                           "' contains reserved '@'");
      }
    }
    for (const auto& [id, n] : g.nodes) {
      if (n.multiplicity != 1 || !n.merged_from.empty()) {
        problems.push_back("graph ir_id " + std::to_string(g.ir_id) + ": node " +
                           std::to_string(id) + " carries merge state");
      }
    }
  };
  check(bundle.original);
  for (const auto& v : bundle.variants) check(v);
  if (!problems.empty()) throw ValidationError(std::move(problems));

  Json doc;
  Json meta = Json::object();
  for (const auto& [k, v] : bundle.metadata) meta[k] = v;
  doc["metadata"] = std::move(meta);
  Json graphs = Json::array();
  graphs.push_back(graph_json(bundle.original));
  for (const auto& v : bundle.variants) graphs.push_back(graph_json(v));
  doc["graphs"] = std::move(graphs);
  return doc.dump(1) + "\n";
}

DumpBundle read_dump_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DumpError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dump(ss.str());
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DumpError("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw DumpError("write failed for " + path);
}

}  // namespace irviz
