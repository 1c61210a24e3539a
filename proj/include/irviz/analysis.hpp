#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irviz/diff_merge.hpp"
#include "irviz/hypergraph.hpp"

namespace irviz {

struct ActivePhase {
  std::string name;
  std::string id;
  std::size_t member_count = 0;
};

/// Line with the most stations; ties go to the smaller first ordinal.
/// Throws std::invalid_argument("no phases") on an empty hypergraph.
ActivePhase most_active_phase(const Hypergraph& h);

/// Symmetric line-by-line intersection counts, indexed like h.hyperedges.
/// The diagonal holds each line's station count.
class PhaseMatrix {
 public:
  PhaseMatrix() = default;
  explicit PhaseMatrix(std::size_t n) : n_(n), cells_(n * n, 0) {}

  std::size_t size() const { return n_; }
  std::size_t at(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
  std::size_t& at(std::size_t i, std::size_t j) { return cells_[i * n_ + j]; }

  friend bool operator==(const PhaseMatrix&, const PhaseMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> cells_;
};

/// Rows are computed in parallel with OpenMP.
PhaseMatrix phase_relationships(const Hypergraph& h);
PhaseMatrix phase_relationships_serial(const Hypergraph& h);

struct NodePhases {
  std::string generated;
  std::vector<std::string> optimized;  // execution order

  friend bool operator==(const NodePhases&, const NodePhases&) = default;
};

/// Throws std::out_of_range for a station that is not in `h`.
NodePhases phases_of_node(const Hypergraph& h, NodeId station);

/// Exact non-negative fraction; compares by cross-multiplication.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Ratio& x, const Ratio& y) { return x.num * y.den == y.num * x.den; }
  friend bool operator<(const Ratio& x, const Ratio& y) { return x.num * y.den < y.num * x.den; }
};

struct LineSuspicion {
  std::string name;
  std::string id;
  std::uint64_t member_count = 0;        // multiplicity-weighted
  std::uint64_t non_original_count = 0;  // multiplicity-weighted, ir_id != 0
  Ratio suspicion;
};

struct MissingOptimization {
  std::string phase_name;
  IrId variant_ir_id = 0;
  std::vector<NodeSignature> signatures;
};

struct SuspicionReport {
  std::vector<LineSuspicion> lines;  // suspicion descending, then name
  std::vector<MissingOptimization> missing;
};

SuspicionReport suspicion_ranking(const Hypergraph& h, const std::vector<PhaseDiff>& diffs);

std::string report_to_json(const SuspicionReport& r);
std::string report_to_text(const SuspicionReport& r);

}  // namespace irviz
