#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tnd {

using NodeId = std::uint32_t;

/// Malformed user input: bad node ids, unparsable files, invalid parameters.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration (thresholds, scheduler parameters, property checks).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A violated internal contract. Seeing one means a bug in the engine or in a
/// potential, never bad user input.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Unordered node pair, normalized so that first < second.
struct Pair {
  NodeId first = 0;
  NodeId second = 0;

  Pair() = default;
  Pair(NodeId a, NodeId b) : first(a < b ? a : b), second(a < b ? b : a) {}

  std::uint64_t key() const { return (std::uint64_t{first} << 32) | second; }
  static Pair from_key(std::uint64_t k) {
    return Pair(static_cast<NodeId>(k >> 32), static_cast<NodeId>(k & 0xffffffffu));
  }

  friend bool operator==(const Pair&, const Pair&) = default;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// 128-bit order-independent digest of a labeled edge set.
///
/// Each edge (u,v), u<v, is mapped through two independent splitmix64
/// finalizers seeded by the key u*2^32+v; the digest is the pair of 64-bit
/// wrapping sums. Additive digests can be maintained incrementally under edge
/// insertion and removal.
struct Digest {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  friend bool operator==(const Digest&, const Digest&) = default;
  std::string hex() const;
};

/// One synchronous round's worth of edge changes.
struct EdgeDelta {
  std::vector<Pair> additions;
  std::vector<Pair> removals;

  bool empty() const { return additions.empty() && removals.empty(); }
  std::size_t size() const { return additions.size() + removals.size(); }
  EdgeDelta inverse() const { return EdgeDelta{removals, additions}; }
};

/// Simple undirected graph on a fixed node set 0..n-1 with sorted adjacency.
///
/// Besides adjacency the graph keeps a degree histogram (so the number of
/// distinct degrees is O(1)) and a running edge-set digest.
class DynGraph {
 public:
  DynGraph() = default;
  explicit DynGraph(std::size_t node_count);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const NodeId> neighbors(NodeId u) const {
    check_node(u);
    return adjacency_[u];
  }
  std::size_t degree(NodeId u) const {
    check_node(u);
    return adjacency_[u].size();
  }
  bool has_edge(NodeId u, NodeId v) const;

  /// Adds (u,v); returns false if it was already present. Self loops are rejected.
  bool add_edge(NodeId u, NodeId v);
  /// Removes (u,v); returns false if it was absent.
  bool remove_edge(NodeId u, NodeId v);

  /// Number of distinct degrees among all nodes (|G| in the degree-class sense).
  std::size_t distinct_degree_count() const { return distinct_degrees_; }
  const Digest& digest() const { return digest_; }

  /// All edges in lexicographic order.
  std::vector<Pair> edges() const;

  bool valid_node(NodeId u) const { return u < adjacency_.size(); }
  void check_node(NodeId u) const {
    if (u >= adjacency_.size()) {
      throw InputError("node id " + std::to_string(u) + " out of range (n=" +
                       std::to_string(adjacency_.size()) + ")");
    }
  }

  friend bool operator==(const DynGraph& a, const DynGraph& b) {
    return a.adjacency_ == b.adjacency_;
  }

  /// Applies a delta. Additions must be absent and removals present; both lists
  /// must be disjoint. Throws ContractError otherwise and leaves the graph intact.
  friend void apply_delta(DynGraph& g, const EdgeDelta& delta);

 private:
  void bump_degree(std::size_t from, std::size_t to);
  void digest_toggle(NodeId u, NodeId v, bool add);

  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
  std::vector<std::size_t> degree_histogram_;
  std::size_t distinct_degrees_ = 0;
  Digest digest_;
};

void apply_delta(DynGraph& g, const EdgeDelta& delta);

/// |N(u) ∩ N(v)|. Requires u != v.
std::size_t common_neighbors(const DynGraph& g, NodeId u, NodeId v);

/// Sorted list N(u) ∩ N(v).
std::vector<NodeId> common_neighbor_list(const DynGraph& g, NodeId u, NodeId v);

/// Number of edges with both endpoints in N(u) ∩ N(v).
std::size_t edges_among_common_neighbors(const DynGraph& g, NodeId u, NodeId v);

/// Number of edges of g inside the given node set.
std::size_t edges_within(const DynGraph& g, std::span<const NodeId> nodes);

/// Induced subgraph on {w : min(d(w,u), d(w,v)) <= radius} with local ids.
struct BallFragment {
  DynGraph graph;
  std::vector<NodeId> to_original;  // local id -> original id (sorted ascending)
  NodeId first = 0;                 // local id of the first center
  NodeId second = 0;                // local id of the second center

  NodeId local_of(NodeId original) const;
};

BallFragment induced_ball(const DynGraph& g, Pair centers, int radius);
BallFragment induced_ball(const DynGraph& g, NodeId u, NodeId v, int radius);

/// Nodes within `radius` hops of u or v (multi-source BFS), sorted.
std::vector<NodeId> ball_nodes(const DynGraph& g, NodeId u, NodeId v, int radius);

/// Same digest the graph maintains incrementally, recomputed from scratch.
Digest graph_fingerprint(const DynGraph& g);

/// Digest contribution of a single edge; exposed for tests.
Digest edge_digest(NodeId u, NodeId v);

/// Number of connected components.
std::size_t component_count(const DynGraph& g);

}  // namespace tnd

template <>
struct std::hash<tnd::Pair> {
  std::size_t operator()(const tnd::Pair& p) const noexcept {
    std::uint64_t x = p.key() + 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};
