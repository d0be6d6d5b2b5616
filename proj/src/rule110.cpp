#include "tnd/rule110.hpp"

#include <algorithm>
#include <sstream>

namespace tnd::rule110 {

std::string Tape::str() const {
  std::string s;
  for (auto c : cells) s.push_back(c ? '1' : '0');
  return s;
}

Tape Tape::parse(const std::string& bits) {
  Tape t;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InputError("tape must be a bit string, got '" + bits + "'");
    t.cells.push_back(c == '1');
  }
  if (t.width() < 3) throw InputError("tape needs at least 3 cells, got " + std::to_string(t.width()));
  return t;
}

int rule(int left, int center, int right) {
  const int pattern = (left << 2) | (center << 1) | right;
  return (0b01101110 >> pattern) & 1;
}

Tape reference_step(const Tape& tape) {
  const std::size_t w = tape.width();
  Tape next;
  next.cells.resize(w);
  for (std::size_t i = 0; i < w; ++i) {
    next.cells[i] = static_cast<std::uint8_t>(
        rule(tape.cells[(i + w - 1) % w], tape.cells[i], tape.cells[(i + 1) % w]));
  }
  return next;
}

std::string to_string(PcgRole r) {
  switch (r) {
    case PcgRole::A1:
      return "A1";
    case PcgRole::A2:
      return "A2";
    case PcgRole::B1:
      return "B1";
    case PcgRole::B2:
      return "B2";
  }
  return "?";
}

bool is_a(PcgRole r) { return r == PcgRole::A1 || r == PcgRole::A2; }

namespace {

constexpr PcgRole kRoles[4] = {PcgRole::A1, PcgRole::A2, PcgRole::B1, PcgRole::B2};

std::string pcg_name(std::uint32_t cell, PcgRole r) {
  return "c" + std::to_string(cell) + "." + to_string(r);
}

// A_j <-> B_j for j = 1, 2
PcgRole partner_b(PcgRole a) { return a == PcgRole::A1 ? PcgRole::B1 : PcgRole::B2; }
PcgRole partner_a(PcgRole b) { return b == PcgRole::B1 ? PcgRole::A1 : PcgRole::A2; }

}  // namespace

std::string GadgetMap::label(NodeId u) const {
  if (u >= labels.size()) return "node" + std::to_string(u);
  const NodeLabel& lb = labels[u];
  const std::string base = pcg_name(lb.cell, lb.pcg);
  switch (lb.role) {
    case NodeRole::h:
      return base + ".h";
    case NodeRole::l:
      return base + ".l";
    case NodeRole::aux:
      return base + ".a" + std::to_string(lb.index);
    case NodeRole::flip_internal:
      return "flip" + std::to_string(lb.index) + "." + std::to_string(u - flips[lb.index].first_internal);
    case NodeRole::always_on_internal:
      return "on" + std::to_string(lb.index) + "." +
             std::to_string(u - always_on[lb.index].first_internal);
  }
  return "?";
}

std::string GadgetMap::flip_name(std::size_t index) const {
  const FlipGadget& f = flips.at(index);
  return "flip gadget #" + std::to_string(index) + " (" + label(f.x) + ", " + label(f.y) + ")";
}

std::uint32_t cover_width(std::uint32_t w) {
  if (w < 1) throw ConfigError("ring width must be positive");
  std::uint32_t c = w;
  while (c < 4) c += w;
  return c;
}

CellAssembly build_assembly(const Tape& tape) {
  const auto w = static_cast<std::uint32_t>(tape.width());
  if (w < 3) throw ConfigError("rule 110 ring needs at least 3 cells, got " + std::to_string(w));

  CellAssembly out;
  out.tape = tape;
  GadgetMap& map = out.map;
  map.width = w;
  const std::uint32_t core_total = w * 4 * kCorePerPcg;
  const std::uint32_t flip_total = w * 4 * kFlipsPerPcg * kFlipInternals;
  const std::uint32_t conn_total = w * 8 * 4 * kAlwaysOnInternals;
  const std::size_t n = std::size_t{core_total} + flip_total + conn_total;
  map.labels.resize(n);

  for (std::uint32_t c = 0; c < w; ++c) {
    for (PcgRole r : kRoles) {
      map.labels[map.h(c, r)] = {c, r, NodeRole::h, 0};
      map.labels[map.l(c, r)] = {c, r, NodeRole::l, 0};
      for (std::uint32_t k = 1; k <= kAux; ++k) map.labels[map.aux(c, r, k)] = {c, r, NodeRole::aux, k};
    }
  }

  EdgeDelta edges;
  auto& e = edges.additions;
  e.reserve(w * 230000u);
  // clique on {x, y} plus `count` internals; the x-y edge only when asked
  auto clique = [&](NodeId x, NodeId y, NodeId first, std::uint32_t count, bool xy) {
    for (NodeId i = first; i < first + count; ++i) {
      e.emplace_back(x, i);
      e.emplace_back(y, i);
      for (NodeId j = i + 1; j < first + count; ++j) e.emplace_back(i, j);
    }
    if (xy) e.emplace_back(x, y);
  };

  NodeId next = core_total;
  for (std::uint32_t c = 0; c < w; ++c) {
    for (PcgRole r : kRoles) {
      for (std::uint32_t k = 1; k <= kAux; ++k) {
        for (NodeId x : {map.h(c, r), map.l(c, r)}) {
          const auto id = static_cast<std::uint32_t>(map.flips.size());
          map.flips.push_back({x, map.aux(c, r, k), c, r, next});
          for (NodeId i = next; i < next + kFlipInternals; ++i) {
            map.labels[i] = {c, r, NodeRole::flip_internal, id};
          }
          clique(x, map.aux(c, r, k), next, kAlwaysOnInternals, false);
          clique(x, map.aux(c, r, k), next + kAlwaysOnInternals, kAlwaysOnInternals, false);
          if (is_a(r)) e.emplace_back(x, map.aux(c, r, k));
          next += kFlipInternals;
        }
      }
    }
  }

  auto connect = [&](std::uint32_t ca, PcgRole a, std::uint32_t cb, PcgRole b) {
    const auto conn = static_cast<std::uint32_t>(map.connections.size());
    map.connections.push_back({ca, a, cb, b});
    const NodeId ends_a[2] = {map.h(ca, a), map.l(ca, a)};
    const NodeId ends_b[2] = {map.h(cb, b), map.l(cb, b)};
    for (NodeId x : ends_a) {
      for (NodeId y : ends_b) {
        const auto id = static_cast<std::uint32_t>(map.always_on.size());
        map.always_on.push_back({x, y, conn, next});
        for (NodeId i = next; i < next + kAlwaysOnInternals; ++i) {
          map.labels[i] = {ca, a, NodeRole::always_on_internal, id};
        }
        clique(x, y, next, kAlwaysOnInternals, true);
        next += kAlwaysOnInternals;
      }
    }
  };
  for (std::uint32_t c = 0; c < w; ++c) {
    const std::uint32_t right = (c + 1) % w;
    for (PcgRole a : {PcgRole::A1, PcgRole::A2}) {
      for (PcgRole b : {PcgRole::B1, PcgRole::B2}) connect(c, a, c, b);
    }
    for (PcgRole a : {PcgRole::A1, PcgRole::A2}) connect(c, a, right, a);
    for (PcgRole a : {PcgRole::A1, PcgRole::A2}) connect(c, a, right, partner_b(a));
  }
  if (next != n) throw ContractError("assembly id layout mismatch");

  for (std::uint32_t c = 0; c < w; ++c) {
    if (!tape.cells[c]) continue;
    for (PcgRole r : kRoles) e.emplace_back(map.h(c, r), map.l(c, r));
  }

  out.graph = DynGraph(n);
  apply_delta(out.graph, edges);
  return out;
}

int pcg_value(const CellAssembly& a, const DynGraph& g, std::uint32_t cell, PcgRole r) {
  return g.has_edge(a.map.h(cell, r), a.map.l(cell, r)) ? 1 : 0;
}

std::vector<CellValue> extract_values(const CellAssembly& a, const DynGraph& g) {
  if (g.node_count() != a.graph.node_count()) {
    throw InputError("graph has " + std::to_string(g.node_count()) + " nodes, assembly " +
                     std::to_string(a.graph.node_count()));
  }
  std::vector<CellValue> out;
  for (std::uint32_t c = 0; c < a.map.width; ++c) {
    int ones = 0;
    for (PcgRole r : kRoles) ones += pcg_value(a, g, c, r);
    out.push_back(ones == 0 ? CellValue::zero : ones == 4 ? CellValue::one : CellValue::inconsistent);
  }
  return out;
}

std::optional<Tape> extract_tape(const CellAssembly& a, const DynGraph& g) {
  Tape t;
  for (CellValue v : extract_values(a, g)) {
    if (v == CellValue::inconsistent) return std::nullopt;
    t.cells.push_back(v == CellValue::one);
  }
  return t;
}

std::string pcg_diagnostic(const CellAssembly& a, const DynGraph& g) {
  std::string s;
  for (std::uint32_t c = 0; c < a.map.width; ++c) {
    if (c) s.push_back(' ');
    for (PcgRole r : kRoles) s.push_back(pcg_value(a, g, c, r) ? '1' : '0');
  }
  return s;
}

void StructureReport::fail(std::string what) {
  ok = false;
  ++violation_count;
  if (violations.size() < 20) violations.push_back(std::move(what));
}

StructureReport check_structure(const CellAssembly& a, const DynGraph& g, Parity parity) {
  if (g.node_count() != a.graph.node_count()) {
    throw InputError("graph does not match the assembly node set");
  }
  const GadgetMap& map = a.map;
  const DynGraph& g0 = a.graph;
  const std::uint32_t w = map.width;
  const bool integer = parity == Parity::integer;
  StructureReport rep;

  // (a) flip special edges
  for (std::size_t i = 0; i < map.flips.size(); ++i) {
    const FlipGadget& f = map.flips[i];
    const bool expect = is_a(f.pcg) == integer;
    if (g.has_edge(f.x, f.y) != expect) {
      rep.fail(map.flip_name(i) + ": special edge " + (expect ? "missing" : "present") + " at " +
               (integer ? "integer" : "half") + " parity");
    }
  }

  // (b) every other edge as in G(0); exempt pairs are (h,l) of a PCG and flip specials
  auto exempt = [&](NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    const NodeLabel& lu = map.labels[u];
    const NodeLabel& lv = map.labels[v];
    if (lu.cell != lv.cell || lu.pcg != lv.pcg) return false;
    if (lu.role == NodeRole::h && lv.role == NodeRole::l) return true;
    return (lu.role == NodeRole::h || lu.role == NodeRole::l) && lv.role == NodeRole::aux;
  };
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto x = g.neighbors(u);
    const auto y = g0.neighbors(u);
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() || j < y.size()) {
      NodeId v;
      bool now;
      if (j == y.size() || (i < x.size() && x[i] < y[j])) {
        v = x[i++];
        now = true;
      } else if (i == x.size() || y[j] < x[i]) {
        v = y[j++];
        now = false;
      } else {
        ++i;
        ++j;
        continue;
      }
      if (v < u || exempt(u, v)) continue;
      rep.fail("edge (" + map.label(u) + ", " + map.label(v) + ") " +
               (now ? "appeared" : "disappeared") + " outside any flip or PCG value pair");
    }
  }

  // (c), (d) per PCG
  auto val = [&](std::uint32_t c, PcgRole r) { return pcg_value(a, g, c % w, r); };
  for (std::uint32_t c = 0; c < w; ++c) {
    const std::uint32_t left = (c + w - 1) % w;
    const std::uint32_t right = (c + 1) % w;
    for (PcgRole r : kRoles) {
      const NodeId h = map.h(c, r);
      const NodeId l = map.l(c, r);
      const std::size_t cn = common_neighbors(g, h, l);
      const std::size_t want_cn = is_a(r) ? (integer ? 70 : 10) : (integer ? 6 : 66);
      if (cn != want_cn) {
        rep.fail(pcg_name(c, r) + ": CN(h,l) = " + std::to_string(cn) + ", expected " +
                 std::to_string(want_cn));
      }
      const std::size_t ce = edges_among_common_neighbors(g, h, l);
      std::size_t want_ce;
      if (is_a(r)) {
        want_ce = 8 + val(left, r) + val(c, PcgRole::B1) + val(c, PcgRole::B2) + val(right, r) +
                  val(right, partner_b(r));
      } else {
        const PcgRole aj = partner_a(r);
        want_ce = 4 + val(left, aj) + val(c, PcgRole::A1) + val(c, PcgRole::A2);
      }
      if (ce != want_ce) {
        rep.fail(pcg_name(c, r) + ": CE(h,l) = " + std::to_string(ce) + ", expected " +
                 std::to_string(want_ce));
      }
    }
  }

  // (e) ranges for the special pairs
  for (std::size_t i = 0; i < map.flips.size(); ++i) {
    const FlipGadget& f = map.flips[i];
    const std::size_t cn = common_neighbors(g, f.x, f.y);
    if (cn < 40 || cn > 41) {
      rep.fail(map.flip_name(i) + ": special pair has " + std::to_string(cn) +
               " common neighbors, expected 40..41");
    }
  }
  for (std::size_t i = 0; i < map.always_on.size(); ++i) {
    const AlwaysOnGadget& o = map.always_on[i];
    const std::size_t cn = common_neighbors(g, o.x, o.y);
    if (cn < 20 || cn > 24) {
      rep.fail("always-on gadget #" + std::to_string(i) + " (" + map.label(o.x) + ", " +
               map.label(o.y) + "): special pair has " + std::to_string(cn) +
               " common neighbors, expected 20..24");
    }
  }
  return rep;
}

SimulationResult simulate(const Tape& tape, std::uint64_t steps, bool merged,
                          const SimulationOptions& options) {
  const auto w = static_cast<std::uint32_t>(tape.width());
  if (w < 3) throw ConfigError("rule 110 ring needs at least 3 cells");
  const std::uint32_t ring = options.literal_ring ? w : cover_width(w);
  Tape ring_tape;
  for (std::uint32_t i = 0; i < ring; ++i) ring_tape.cells.push_back(tape.cells[i % w]);

  const CellAssembly assembly = build_assembly(ring_tape);
  SimulationResult res;
  res.ring_width = ring;
  res.reference.push_back(tape);
  for (std::uint64_t s = 0; s < steps; ++s) res.reference.push_back(reference_step(res.reference.back()));

  const Potential base = rule110_potential(options.beta);
  const Potential potential = merged ? two_step_merge(base) : base;
  const std::uint64_t per_step = merged ? 1 : 2;

  auto record = [&](std::uint64_t step, const DynGraph& g) {
    const auto extracted = extract_tape(assembly, g);
    if (!extracted) {
      res.fidelity_ok = false;
      res.failures.push_back("step " + std::to_string(step) + ": inconsistent cell gadgets [" +
                             pcg_diagnostic(assembly, g) + "]");
      res.tapes.push_back(Tape{std::vector<std::uint8_t>(w, 0)});
      return;
    }
    Tape t;
    t.cells.assign(extracted->cells.begin(), extracted->cells.begin() + w);
    for (std::uint32_t i = w; i < ring; ++i) {
      if (extracted->cells[i] != t.cells[i % w]) {
        res.fidelity_ok = false;
        res.failures.push_back("step " + std::to_string(step) + ": replica cell " +
                               std::to_string(i) + " disagrees with cell " + std::to_string(i % w));
        break;
      }
    }
    if (step < res.reference.size() && t != res.reference[step]) {
      res.fidelity_ok = false;
      res.failures.push_back("step " + std::to_string(step) + ": extracted " + t.str() +
                             ", reference " + res.reference[step].str());
    }
    res.tapes.push_back(std::move(t));
  };

  auto structure = [&](std::uint64_t round, const DynGraph& g, Parity parity) {
    if (!options.check_every_round) return;
    const StructureReport rep = check_structure(assembly, g, parity);
    if (rep.ok) return;
    res.structure_ok = false;
    for (const auto& v : rep.violations) {
      res.failures.push_back("round " + std::to_string(round) + ": " + v);
    }
  };

  record(0, assembly.graph);
  structure(0, assembly.graph, Parity::integer);

  if (steps > 0) {
    RunConfig cfg(assembly.graph, potential, complete_scheduler());
    cfg.max_rounds = steps * per_step;
    cfg.stop_mode = StopMode::budget;
    cfg.prune = options.prune;
    cfg.cycle_history = 8;
    cfg.metadata["tape"] = tape.str();
    cfg.metadata["ring_width"] = std::to_string(ring);
    cfg.metadata["round_to_time"] = merged ? "round r ends at CA step r+1"
                                           : "round r ends at time (r+1)/2; odd r+1 are half steps";
    cfg.observer = [&](std::uint64_t t, const EdgeDelta&, const DynGraph& after) {
      const std::uint64_t done = t + 1;
      const bool at_integer = done % per_step == 0;
      structure(done, after, at_integer ? Parity::integer : Parity::half);
      if (at_integer) record(done / per_step, after);
    };
    RunResult run_result = run(cfg);
    res.trace = std::move(run_result.trace);
    res.final_graph = std::move(run_result.final_graph);
  } else {
    res.final_graph = assembly.graph;
    res.trace.node_count = assembly.graph.node_count();
    res.trace.verdict = Verdict::budget;
    res.trace.initial_fingerprint = res.trace.final_fingerprint = assembly.graph.digest();
  }
  return res;
}

}  // namespace tnd::rule110
