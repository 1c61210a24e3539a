// irviz: merge, simplify and map the IR graphs of a family of JIT compilations.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "irviz/diff_merge.hpp"
#include "irviz/ingest.hpp"
#include "irviz/pipeline.hpp"
#include "irviz/synth.hpp"

namespace {

using irviz::PipelineOptions;

struct PassFlags {
  bool no_dead_removal = false;
  bool no_node_merge = false;
  bool no_hyperedge_merge = false;
  bool no_station_merge = false;

  void attach(CLI::App* cmd) {
    cmd->add_flag("--no-dead-removal", no_dead_removal, "Keep nodes without edges");
    cmd->add_flag("--no-node-merge", no_node_merge, "Skip merging equivalent IR nodes");
    cmd->add_flag("--no-hyperedge-merge", no_hyperedge_merge,
                  "Keep one line per phase execution instead of per phase name");
    cmd->add_flag("--no-station-merge", no_station_merge, "Skip opcode-based station merging");
  }

  PipelineOptions options() const {
    PipelineOptions o;
    o.dead_removal = !no_dead_removal;
    o.node_merge = !no_node_merge;
    o.hyperedge_merge = !no_hyperedge_merge;
    o.station_merge = !no_station_merge;
    return o;
  }
};

// IRVIZ_COLORS="3,0,7" recolors lines cyclically with those palette indices.
std::vector<std::int64_t> palette_from_env() {
  std::vector<std::int64_t> out;
  const char* env = std::getenv("IRVIZ_COLORS");
  if (!env || !*env) return out;
  std::stringstream ss(env);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const long long v = std::stoll(item, &used);
    if (used != item.size()) throw std::invalid_argument("IRVIZ_COLORS: bad entry '" + item + "'");
    out.push_back(v);
  }
  return out;
}

int cmd_validate(const std::string& path) {
  try {
    const auto bundle = irviz::read_dump_file(path);
    std::cout << path << ": ok (" << 1 + bundle.variants.size() << " graphs, "
              << bundle.variants.size() << " variants)\n";
    return 0;
  } catch (const irviz::ValidationError& e) {
    std::cout << path << ": invalid\n";
    for (const auto& v : e.violations()) std::cout << "  " << v << "\n";
    return 1;
  }
}

int cmd_diff(const std::string& path, const std::string& format) {
  const auto bundle = irviz::read_dump_file(path);
  const auto diffs = irviz::diff_variants(bundle.original, bundle.variants);
  if (format == "json") {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < diffs.size(); ++i) {
      for (const auto& d : diffs[i]) {
        nlohmann::ordered_json j;
        j["variant_ir_id"] = d.variant_ir_id;
        j["phase"] = d.phase_name;
        j["added_nodes"] = d.added_nodes;
        nlohmann::ordered_json miss = nlohmann::ordered_json::array();
        for (const auto& s : d.missing_signatures) miss.push_back(irviz::to_string(s));
        j["missing_signatures"] = std::move(miss);
        doc.push_back(std::move(j));
      }
    }
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    std::cout << "IR " << bundle.variants[i].ir_id << ": "
              << (diffs[i].empty() ? "identical to R0" : std::to_string(diffs[i].size()) + " differing phase(s)")
              << "\n";
    for (const auto& d : diffs[i]) {
      std::cout << "  " << d.phase_name << ": +" << d.added_nodes.size() << " -"
                << d.missing_signatures.size();
      if (!d.added_nodes.empty()) {
        std::cout << "  added";
        for (auto id : d.added_nodes) std::cout << " " << id;
      }
      std::cout << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Merge, simplify and map JIT compiler IR graphs as a metro map"};
  app.require_subcommand(1);

  std::string input, out_path, report_path, format = "json";
  PassFlags pipeline_flags;
  auto* pipeline = app.add_subcommand("pipeline", "Run the full pipeline and write the map");
  pipeline->add_option("--input", input, "IR dump bundle")->required()->check(CLI::ExistingFile);
  pipeline->add_option("--out", out_path, "Metro map JSON output")->required();
  pipeline->add_option("--report", report_path, "Suspicion report output");
  pipeline->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  pipeline_flags.attach(pipeline);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Parse and validate a dump bundle");
  validate->add_option("input", validate_path, "IR dump bundle")->required();

  std::string diff_path, diff_format = "text";
  auto* diff = app.add_subcommand("diff", "Print per-variant phase differences against R0");
  diff->add_option("input", diff_path, "IR dump bundle")->required()->check(CLI::ExistingFile);
  diff->add_option("--format", diff_format, "Output format")->check(CLI::IsMember({"json", "text"}));

  std::string report_input, report_format = "text";
  PassFlags report_flags;
  auto* report = app.add_subcommand("report", "Print the phase suspicion ranking");
  report->add_option("input", report_input, "IR dump bundle")->required()->check(CLI::ExistingFile);
  report->add_option("--format", report_format, "Output format")->check(CLI::IsMember({"json", "text"}));
  report_flags.attach(report);

  std::uint64_t seed = 0;
  irviz::SynthSpec spec;
  std::string injection = "added", synth_out, truth_out;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dump bundle with injected bugs");
  synth->add_option("--seed", seed, "RNG seed")->required();
  synth->add_option("--variants", spec.n_variants, "Number of variant IRs");
  synth->add_option("--buggy", spec.n_buggy_variants, "How many variants carry the injected bug");
  synth->add_option("--buggy-phase", spec.buggy_phase, "Phase that receives the injection");
  synth->add_option("--nodes-min", spec.nodes_min);
  synth->add_option("--nodes-max", spec.nodes_max);
  synth->add_option("--phases-min", spec.phases_min);
  synth->add_option("--phases-max", spec.phases_max);
  synth->add_option("--injection", injection)->check(CLI::IsMember({"added", "removed"}));
  synth->add_option("--out", synth_out, "Bundle output (stdout when omitted)");
  synth->add_option("--truth", truth_out, "Ground-truth JSON output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*pipeline) {
      auto options = pipeline_flags.options();
      options.palette = palette_from_env();
      const auto result = irviz::run_pipeline(irviz::read_dump_file(input), options);
      irviz::write_text_file(out_path, irviz::metro_map_to_json(result.map));
      if (!report_path.empty()) {
        irviz::write_text_file(report_path, format == "json" ? irviz::report_to_json(result.report)
                                                             : irviz::report_to_text(result.report));
      }
      std::cout << irviz::format_stage_summary(result.stages);
      if (!result.report.lines.empty()) {
        const auto& top = result.report.lines.front();
        std::cout << "most suspicious: " << top.name << " (" << top.non_original_count << "/"
                  << top.member_count << ")\n";
      }
      return 0;
    }
    if (*validate) return cmd_validate(validate_path);
    if (*diff) return cmd_diff(diff_path, diff_format);
    if (*report) {
      const auto result = irviz::run_pipeline(irviz::read_dump_file(report_input), report_flags.options());
      std::cout << (report_format == "json" ? irviz::report_to_json(result.report)
                                            : irviz::report_to_text(result.report));
      return 0;
    }
    if (*synth) {
      spec.injection = injection == "added" ? irviz::Injection::kAdded : irviz::Injection::kRemoved;
      const auto result = irviz::generate_bundle(seed, spec);
      const std::string text = irviz::write_dump(result.bundle);
      if (synth_out.empty()) {
        std::cout << text;
      } else {
        irviz::write_text_file(synth_out, text);
      }
      if (!truth_out.empty()) irviz::write_text_file(truth_out, irviz::ground_truth_to_json(result.truth));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "irviz: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
