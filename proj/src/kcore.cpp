#include "tnd/kcore.hpp"

#include <algorithm>
#include <sstream>

namespace tnd {

CoreDecomposition peel(const DynGraph& g, std::size_t k) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> deg(n);
  std::size_t max_deg = 0;
  for (NodeId u = 0; u < n; ++u) {
    deg[u] = g.degree(u);
    max_deg = std::max(max_deg, deg[u]);
  }
  // bucket queue keyed by current degree; stale entries are skipped
  std::vector<std::vector<NodeId>> bucket(max_deg + 1);
  for (NodeId u = 0; u < n; ++u) bucket[deg[u]].push_back(u);
  std::vector<char> removed(n, 0);
  for (std::size_t d = 0; d < std::min(k, max_deg + 1); ++d) {
    while (!bucket[d].empty()) {
      const NodeId u = bucket[d].back();
      bucket[d].pop_back();
      if (removed[u] || deg[u] != d) continue;
      removed[u] = 1;
      for (NodeId w : g.neighbors(u)) {
        if (removed[w]) continue;
        const std::size_t nd = --deg[w];
        bucket[nd].push_back(w);
        if (nd < d) d = nd;  // re-scan the lower bucket
      }
    }
  }
  CoreDecomposition out;
  out.k = k;
  for (NodeId u = 0; u < n; ++u) (removed[u] ? out.crust_nodes : out.core_nodes).push_back(u);
  return out;
}

std::string KcoreReport::summary() const {
  std::ostringstream os;
  if (ok) return "k-core verification passed";
  os << "k-core verification failed:";
  if (!misclassified.empty()) {
    os << " misclassified nodes";
    for (std::size_t i = 0; i < std::min<std::size_t>(misclassified.size(), 20); ++i) {
      os << ' ' << misclassified[i];
    }
    if (misclassified.size() > 20) os << " ...";
    os << ';';
  }
  if (!missing_edges.empty()) os << ' ' << missing_edges.size() << " core edges missing;";
  if (!extra_edges.empty()) os << ' ' << extra_edges.size() << " unexpected edges;";
  return os.str();
}

KcoreReport verify_kcore_run(const DynGraph& final_graph, const DynGraph& g0, std::size_t alpha) {
  if (final_graph.node_count() != g0.node_count()) {
    throw InputError("final graph has " + std::to_string(final_graph.node_count()) +
                     " nodes, initial graph " + std::to_string(g0.node_count()));
  }
  const CoreDecomposition oracle = peel(g0, alpha);
  std::vector<char> in_core(g0.node_count(), 0);
  for (NodeId u : oracle.core_nodes) in_core[u] = 1;

  KcoreReport r;
  for (NodeId u = 0; u < g0.node_count(); ++u) {
    const bool isolated = final_graph.degree(u) == 0;
    // a core node always keeps degree >= alpha >= 1 unless alpha == 0
    const bool expect_isolated = !in_core[u] || g0.degree(u) == 0;
    if (isolated != expect_isolated) r.misclassified.push_back(u);
  }
  for (const Pair& p : g0.edges()) {
    if (in_core[p.first] && in_core[p.second] && !final_graph.has_edge(p.first, p.second)) {
      r.missing_edges.push_back(p);
    }
  }
  for (const Pair& p : final_graph.edges()) {
    if (!(in_core[p.first] && in_core[p.second] && g0.has_edge(p.first, p.second))) {
      r.extra_edges.push_back(p);
    }
  }
  r.ok = r.misclassified.empty() && r.missing_edges.empty() && r.extra_edges.empty();
  return r;
}

}  // namespace tnd
