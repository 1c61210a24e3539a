#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "irviz/ingest.hpp"

namespace irviz {

enum class Injection { kAdded, kRemoved };

struct SynthSpec {
  std::uint32_t n_variants = 19;
  std::uint32_t nodes_min = 300;
  std::uint32_t nodes_max = 500;
  std::uint32_t phases_min = 30;
  std::uint32_t phases_max = 40;
  std::string buggy_phase = "EarlyOptimization";
  std::uint32_t n_buggy_variants = 9;
  Injection injection = Injection::kAdded;
};

/// What was done to one variant. For kAdded, `injected` holds variant node
/// ids; for kRemoved, `removed` holds R0 node ids that the variant lacks.
struct VariantTruth {
  IrId ir_id = 0;
  bool buggy = false;
  std::vector<NodeId> injected;
  std::vector<NodeId> removed;

  friend bool operator==(const VariantTruth&, const VariantTruth&) = default;
};

struct GroundTruth {
  std::string buggy_phase;
  Injection injection = Injection::kAdded;
  std::vector<VariantTruth> variants;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct SynthResult {
  DumpBundle bundle;
  GroundTruth truth;
};

class SynthSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Phase names the generator draws from, in pipeline order.
const std::vector<std::string>& synth_phase_names();
/// Opcode alphabet the generator draws from.
const std::vector<std::string>& synth_opcodes();

/// Deterministic for a fixed seed. Throws SynthSpecError for ranges outside
/// [1, 10000], inverted ranges, more buggy variants than variants, or a
/// buggy phase the generator does not know.
SynthResult generate_bundle(std::uint64_t seed, const SynthSpec& spec);

std::string ground_truth_to_json(const GroundTruth& t);

}  // namespace irviz
