#pragma once

#include "tnd/graph.hpp"
#include "tnd/schedulers.hpp"

namespace tnd {

/// Erdős–Rényi G(n, p): each pair independently, in lexicographic order.
DynGraph gnp(std::size_t n, double p, Rng& rng);
DynGraph cycle_graph(std::size_t n);
DynGraph path_graph(std::size_t n);
/// Node 0 is the center.
DynGraph star_graph(std::size_t n);
DynGraph complete_graph(std::size_t n);
/// Random spanning tree (each node attaches to a uniformly chosen earlier node
/// of a random order) plus independent extra edges with probability p.
DynGraph random_connected(std::size_t n, double p, Rng& rng);

DynGraph graph_from_edges(std::size_t n, const std::vector<Pair>& edges);

}  // namespace tnd
