#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tnd/engine.hpp"
#include "tnd/graph.hpp"

namespace tnd::rule110 {

/// Cyclic binary tape of width >= 3.
struct Tape {
  std::vector<std::uint8_t> cells;

  std::size_t width() const { return cells.size(); }
  std::string str() const;
  static Tape parse(const std::string& bits);
  friend bool operator==(const Tape&, const Tape&) = default;
};

/// New value of a cell from (left, center, right); bits of 01101110 over 111..000.
int rule(int left, int center, int right);
Tape reference_step(const Tape& tape);

enum class PcgRole : std::uint8_t { A1 = 0, A2 = 1, B1 = 2, B2 = 3 };
enum class NodeRole : std::uint8_t { h, l, aux, flip_internal, always_on_internal };

std::string to_string(PcgRole r);
bool is_a(PcgRole r);

struct NodeLabel {
  std::uint32_t cell = 0;
  PcgRole pcg = PcgRole::A1;
  NodeRole role = NodeRole::h;
  std::uint32_t index = 0;  // aux: k in 1..60; internals: gadget id
};

struct FlipGadget {
  NodeId x = 0;  // h or l of the owning PCG
  NodeId y = 0;  // an auxiliary a_k
  std::uint32_t cell = 0;
  PcgRole pcg = PcgRole::A1;
  NodeId first_internal = 0;  // 40 consecutive ids
};

/// A PCG connection: 4 always-on gadgets between {h,l} of two PCGs.
struct Connection {
  std::uint32_t cell_a = 0;
  PcgRole a = PcgRole::A1;
  std::uint32_t cell_b = 0;
  PcgRole b = PcgRole::B1;
};

struct AlwaysOnGadget {
  NodeId x = 0;
  NodeId y = 0;
  std::uint32_t connection = 0;
  NodeId first_internal = 0;  // 20 consecutive ids
};

inline constexpr std::uint32_t kAux = 60;
inline constexpr std::uint32_t kCorePerPcg = 2 + kAux;
inline constexpr std::uint32_t kFlipsPerPcg = 2 * kAux;
inline constexpr std::uint32_t kFlipInternals = 40;
inline constexpr std::uint32_t kAlwaysOnInternals = 20;
inline constexpr std::uint32_t kNodesPerPcg = kCorePerPcg + kFlipsPerPcg * kFlipInternals;

/// Node id layout: core nodes of every PCG (cell-major, roles A1 A2 B1 B2,
/// each h, l, a1..a60), then flip internals per PCG (flips (h,a_k),(l,a_k)
/// for k = 1..60, 40 ids each), then connection internals per cell (A_j x B_k
/// inside the cell, then A_j(i)-A_j(i+1), then A_j(i)-B_j(i+1); each
/// connection 4 gadgets hh, hl, lh, ll of 20 ids).
struct GadgetMap {
  std::uint32_t width = 0;
  std::vector<NodeLabel> labels;
  std::vector<FlipGadget> flips;
  std::vector<Connection> connections;
  std::vector<AlwaysOnGadget> always_on;

  NodeId h(std::uint32_t cell, PcgRole r) const { return core(cell, r); }
  NodeId l(std::uint32_t cell, PcgRole r) const { return core(cell, r) + 1; }
  NodeId aux(std::uint32_t cell, PcgRole r, std::uint32_t k) const { return core(cell, r) + 1 + k; }
  std::string label(NodeId u) const;
  std::string flip_name(std::size_t index) const;

 private:
  NodeId core(std::uint32_t cell, PcgRole r) const {
    return (cell * 4 + static_cast<std::uint32_t>(r)) * kCorePerPcg;
  }
};

struct CellAssembly {
  DynGraph graph;  // G(0)
  GadgetMap map;
  Tape tape;
};

/// The gadget graph for `tape` on a ring of tape.width() cells.
CellAssembly build_assembly(const Tape& tape);

enum class CellValue { zero, one, inconsistent };

/// Value of one PCG: its (h,l) edge.
int pcg_value(const CellAssembly& a, const DynGraph& g, std::uint32_t cell, PcgRole r);
std::vector<CellValue> extract_values(const CellAssembly& a, const DynGraph& g);
/// The tape if every cell is consistent.
std::optional<Tape> extract_tape(const CellAssembly& a, const DynGraph& g);
/// "A1A2B1B2" bits per cell, e.g. "1100 0000 ...", for half-step diagnostics.
std::string pcg_diagnostic(const CellAssembly& a, const DynGraph& g);

enum class Parity { integer, half };

struct StructureReport {
  bool ok = true;
  std::size_t violation_count = 0;
  std::vector<std::string> violations;  // first few, naming the gadget

  void fail(std::string what);
};

/// Structural invariants of a graph reached by the gadget dynamics:
///   (a) A-flip special edges present iff integer parity, B-flip iff half parity
///   (b) all other edges except PCG (h,l) edges as in G(0)
///   (c) CN(h,l) = 70 / 10 for A PCGs and 6 / 66 for B PCGs (integer / half)
///   (d) CE(h,l) per PCG equal to the wiring formulas in the current values
///   (e) CN of flip special pairs in [40,41], of always-on special pairs in [20,24]
StructureReport check_structure(const CellAssembly& a, const DynGraph& g, Parity parity);

/// Smallest ring width >= 4 that is a multiple of w. Below 4 cells the cross
/// wiring closes on itself and adds edges among common neighbors.
std::uint32_t cover_width(std::uint32_t w);

struct SimulationOptions {
  double beta = 100.0;
  bool prune = true;
  bool check_every_round = true;
  /// Build the literal ring even for width 3.
  bool literal_ring = false;
};

struct SimulationResult {
  std::vector<Tape> tapes;  // extracted at CA steps 0..steps
  std::vector<Tape> reference;
  RunTrace trace;
  std::uint32_t ring_width = 0;
  bool fidelity_ok = true;
  bool structure_ok = true;
  std::vector<std::string> failures;
  DynGraph final_graph;
};

/// Builds the assembly and runs the gadget potential with the complete
/// scheduler: 2 rounds per CA step, or 1 round with the merged potential.
SimulationResult simulate(const Tape& tape, std::uint64_t steps, bool merged,
                          const SimulationOptions& options = {});

}  // namespace tnd::rule110
