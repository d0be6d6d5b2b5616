#include "tnd/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <unordered_map>

namespace tnd {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool sorted_contains(std::span<const NodeId> list, NodeId x) {
  return std::binary_search(list.begin(), list.end(), x);
}

// Counts |a ∩ b| for sorted lists. Switches to binary search when the sizes
// are lopsided (hub nodes in the gadget graphs have thousands of neighbors).
template <typename Fn>
void for_each_common(std::span<const NodeId> a, std::span<const NodeId> b, Fn&& fn) {
  if (a.size() > b.size()) std::swap(a, b);
  if (a.empty()) return;
  if (a.size() * 16 < b.size()) {
    auto lo = b.begin();
    for (NodeId x : a) {
      lo = std::lower_bound(lo, b.end(), x);
      if (lo == b.end()) return;
      if (*lo == x) fn(x);
    }
    return;
  }
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      fn(*i);
      ++i;
      ++j;
    }
  }
}

}  // namespace

std::string Digest::hex() const {
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return buf;
}

Digest edge_digest(NodeId u, NodeId v) {
  const Pair p(u, v);
  const std::uint64_t k = p.key();
  return Digest{splitmix(k ^ 0x5851f42d4c957f2dULL), splitmix(k * 0xd1342543de82ef95ULL + 1)};
}

DynGraph::DynGraph(std::size_t node_count)
    : adjacency_(node_count), degree_histogram_(node_count == 0 ? 1 : node_count, 0) {
  if (node_count > 0) {
    degree_histogram_[0] = node_count;
    distinct_degrees_ = 1;
  }
}

bool DynGraph::has_edge(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  const auto& a = adjacency_[u];
  const auto& b = adjacency_[v];
  return a.size() <= b.size() ? sorted_contains(a, v) : sorted_contains(b, u);
}

void DynGraph::bump_degree(std::size_t from, std::size_t to) {
  if (--degree_histogram_[from] == 0) --distinct_degrees_;
  if (degree_histogram_[to]++ == 0) ++distinct_degrees_;
}

void DynGraph::digest_toggle(NodeId u, NodeId v, bool add) {
  const Digest d = edge_digest(u, v);
  if (add) {
    digest_.hi += d.hi;
    digest_.lo += d.lo;
  } else {
    digest_.hi -= d.hi;
    digest_.lo -= d.lo;
  }
}

bool DynGraph::add_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  if (u == v) throw InputError("self loop on node " + std::to_string(u));
  auto& a = adjacency_[u];
  auto it = std::lower_bound(a.begin(), a.end(), v);
  if (it != a.end() && *it == v) return false;
  a.insert(it, v);
  auto& b = adjacency_[v];
  b.insert(std::lower_bound(b.begin(), b.end(), u), u);
  bump_degree(a.size() - 1, a.size());
  bump_degree(b.size() - 1, b.size());
  ++edge_count_;
  digest_toggle(u, v, true);
  return true;
}

bool DynGraph::remove_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  auto& a = adjacency_[u];
  auto it = std::lower_bound(a.begin(), a.end(), v);
  if (it == a.end() || *it != v) return false;
  a.erase(it);
  auto& b = adjacency_[v];
  b.erase(std::lower_bound(b.begin(), b.end(), u));
  bump_degree(a.size() + 1, a.size());
  bump_degree(b.size() + 1, b.size());
  --edge_count_;
  digest_toggle(u, v, false);
  return true;
}

std::vector<Pair> DynGraph::edges() const {
  std::vector<Pair> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

void apply_delta(DynGraph& g, const EdgeDelta& delta) {
  auto keys_of = [](const std::vector<Pair>& pairs) {
    std::vector<std::uint64_t> keys;
    keys.reserve(pairs.size());
    for (const Pair& p : pairs) keys.push_back(p.key());
    std::sort(keys.begin(), keys.end());
    return keys;
  };
  const auto add_keys = keys_of(delta.additions);
  const auto rem_keys = keys_of(delta.removals);
  if (std::adjacent_find(add_keys.begin(), add_keys.end()) != add_keys.end() ||
      std::adjacent_find(rem_keys.begin(), rem_keys.end()) != rem_keys.end()) {
    throw ContractError("edge delta contains duplicate pairs");
  }
  std::vector<std::uint64_t> both;
  std::set_intersection(add_keys.begin(), add_keys.end(), rem_keys.begin(), rem_keys.end(),
                        std::back_inserter(both));
  if (!both.empty()) throw ContractError("edge delta adds and removes the same pair");
  for (const Pair& p : delta.additions) {
    if (p.first == p.second || !g.valid_node(p.second)) {
      throw ContractError("edge delta addition is not a valid pair");
    }
    if (g.has_edge(p.first, p.second)) {
      throw ContractError("edge delta adds existing edge (" + std::to_string(p.first) + "," +
                          std::to_string(p.second) + ")");
    }
  }
  for (const Pair& p : delta.removals) {
    if (!g.valid_node(p.second) || !g.has_edge(p.first, p.second)) {
      throw ContractError("edge delta removes missing edge (" + std::to_string(p.first) + "," +
                          std::to_string(p.second) + ")");
    }
  }

  // Group changes per endpoint so each touched adjacency list is rebuilt once.
  struct Change {
    NodeId node;
    NodeId other;
    bool add;
  };
  std::vector<Change> changes;
  changes.reserve(2 * delta.size());
  for (const Pair& p : delta.additions) {
    changes.push_back({p.first, p.second, true});
    changes.push_back({p.second, p.first, true});
  }
  for (const Pair& p : delta.removals) {
    changes.push_back({p.first, p.second, false});
    changes.push_back({p.second, p.first, false});
  }
  std::sort(changes.begin(), changes.end(), [](const Change& a, const Change& b) {
    return a.node != b.node ? a.node < b.node : a.other < b.other;
  });

  std::vector<NodeId> adds;
  std::vector<NodeId> merged;
  for (std::size_t i = 0; i < changes.size();) {
    const NodeId node = changes[i].node;
    adds.clear();
    std::size_t j = i;
    std::size_t removed = 0;
    for (; j < changes.size() && changes[j].node == node; ++j) {
      if (changes[j].add) {
        adds.push_back(changes[j].other);
      } else {
        ++removed;
      }
    }
    auto& list = g.adjacency_[node];
    const std::size_t old_degree = list.size();
    if (removed > 0) {
      std::size_t k = i;
      std::erase_if(list, [&](NodeId x) {
        while (k < j && (changes[k].add || changes[k].other < x)) ++k;
        return k < j && changes[k].other == x;
      });
    }
    if (!adds.empty()) {
      merged.clear();
      merged.reserve(list.size() + adds.size());
      std::merge(list.begin(), list.end(), adds.begin(), adds.end(), std::back_inserter(merged));
      list.swap(merged);
    }
    if (list.size() != old_degree) g.bump_degree(old_degree, list.size());
    i = j;
  }
  for (const Pair& p : delta.additions) g.digest_toggle(p.first, p.second, true);
  for (const Pair& p : delta.removals) g.digest_toggle(p.first, p.second, false);
  g.edge_count_ += delta.additions.size();
  g.edge_count_ -= delta.removals.size();
}

std::size_t common_neighbors(const DynGraph& g, NodeId u, NodeId v) {
  g.check_node(u);
  g.check_node(v);
  if (u == v) throw InputError("common_neighbors requires distinct nodes");
  std::size_t count = 0;
  for_each_common(g.neighbors(u), g.neighbors(v), [&](NodeId) { ++count; });
  return count;
}

std::vector<NodeId> common_neighbor_list(const DynGraph& g, NodeId u, NodeId v) {
  g.check_node(u);
  g.check_node(v);
  if (u == v) throw InputError("common_neighbor_list requires distinct nodes");
  std::vector<NodeId> out;
  for_each_common(g.neighbors(u), g.neighbors(v), [&](NodeId w) { out.push_back(w); });
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t edges_within(const DynGraph& g, std::span<const NodeId> nodes) {
  // nodes is sorted; count each edge once from its smaller endpoint.
  std::size_t count = 0;
  for (NodeId a : nodes) {
    auto nb = g.neighbors(a);
    auto from = std::upper_bound(nb.begin(), nb.end(), a);
    for_each_common(std::span<const NodeId>(from, nb.end()), nodes, [&](NodeId) { ++count; });
  }
  return count;
}

std::size_t edges_among_common_neighbors(const DynGraph& g, NodeId u, NodeId v) {
  const auto common = common_neighbor_list(g, u, v);
  return edges_within(g, common);
}

std::vector<NodeId> ball_nodes(const DynGraph& g, NodeId u, NodeId v, int radius) {
  g.check_node(u);
  g.check_node(v);
  if (radius < 0) throw InputError("ball radius must be non-negative");
  std::unordered_map<NodeId, int> dist;
  std::deque<NodeId> queue;
  for (NodeId c : {u, v}) {
    if (dist.emplace(c, 0).second) queue.push_back(c);
  }
  while (!queue.empty()) {
    const NodeId x = queue.front();
    queue.pop_front();
    const int d = dist[x];
    if (d == radius) continue;
    for (NodeId y : g.neighbors(x)) {
      if (dist.emplace(y, d + 1).second) queue.push_back(y);
    }
  }
  std::vector<NodeId> out;
  out.reserve(dist.size());
  for (const auto& [node, d] : dist) out.push_back(node);
  std::sort(out.begin(), out.end());
  return out;
}

NodeId BallFragment::local_of(NodeId original) const {
  auto it = std::lower_bound(to_original.begin(), to_original.end(), original);
  if (it == to_original.end() || *it != original) {
    throw InputError("node " + std::to_string(original) + " is not inside the ball");
  }
  return static_cast<NodeId>(it - to_original.begin());
}

BallFragment induced_ball(const DynGraph& g, NodeId u, NodeId v, int radius) {
  BallFragment frag;
  frag.to_original = ball_nodes(g, u, v, radius);
  frag.graph = DynGraph(frag.to_original.size());
  EdgeDelta edges;
  for (NodeId local = 0; local < frag.to_original.size(); ++local) {
    const NodeId a = frag.to_original[local];
    for_each_common(g.neighbors(a), frag.to_original, [&](NodeId b) {
      if (a < b) edges.additions.emplace_back(local, frag.local_of(b));
    });
  }
  apply_delta(frag.graph, edges);
  frag.first = frag.local_of(u);
  frag.second = frag.local_of(v);
  return frag;
}

BallFragment induced_ball(const DynGraph& g, Pair centers, int radius) {
  return induced_ball(g, centers.first, centers.second, radius);
}

Digest graph_fingerprint(const DynGraph& g) {
  Digest total;
  for (const Pair& e : g.edges()) {
    const Digest d = edge_digest(e.first, e.second);
    total.hi += d.hi;
    total.lo += d.lo;
  }
  return total;
}

std::size_t component_count(const DynGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<NodeId> parent(n);
  for (NodeId i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](NodeId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::size_t components = n;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (u < v) {
        const NodeId a = find(u);
        const NodeId b = find(v);
        if (a != b) {
          parent[a] = b;
          --components;
        }
      }
    }
  }
  return components;
}

}  // namespace tnd
