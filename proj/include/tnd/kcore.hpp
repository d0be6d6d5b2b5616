#pragma once

#include <string>
#include <vector>

#include "tnd/graph.hpp"

namespace tnd {

struct CoreDecomposition {
  std::size_t k = 0;
  std::vector<NodeId> core_nodes;   // sorted
  std::vector<NodeId> crust_nodes;  // sorted
};

/// k-core by repeated deletion of nodes with degree below k (bucket queue, O(n+m)).
CoreDecomposition peel(const DynGraph& g, std::size_t k);

struct KcoreReport {
  bool ok = true;
  std::vector<NodeId> misclassified;  // isolated/non-isolated status disagrees with the oracle
  std::vector<Pair> missing_edges;    // core edges of g0 absent from the final graph
  std::vector<Pair> extra_edges;      // final edges that are not core edges of g0
  std::string summary() const;
};

/// The final graph of a min-degree run must consist of the alpha-core of g0
/// with its original edges, all other nodes isolated.
KcoreReport verify_kcore_run(const DynGraph& final_graph, const DynGraph& g0, std::size_t alpha);

}  // namespace tnd
