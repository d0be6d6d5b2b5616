#include "tnd/local_view.hpp"

#include <algorithm>

namespace tnd {

void LocalView::require_inside(NodeId w) const {
  if (!contains(w)) {
    throw ContractError("potential accessed node " + std::to_string(label(w)) +
                        " outside its radius-" + std::to_string(radius()) + " ball");
  }
}

std::vector<NodeId> LocalView::common_neighbors() const {
  const auto a = neighbors(first());
  const auto b = neighbors(second());
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t LocalView::common_neighbor_count() const { return common_neighbors().size(); }

std::size_t LocalView::common_neighbor_edge_count() const {
  const auto common = common_neighbors();
  std::size_t count = 0;
  for (std::size_t i = 0; i < common.size(); ++i) {
    for (std::size_t j = i + 1; j < common.size(); ++j) {
      if (has_edge(common[i], common[j])) ++count;
    }
  }
  return count;
}

GraphBallView::GraphBallView(const DynGraph& g, NodeId u, NodeId v, int radius)
    : g_(g), u_(u), v_(v), radius_(radius) {
  g.check_node(u);
  g.check_node(v);
  if (u == v) throw ContractError("a local view needs two distinct centers");
  if (radius < 0) throw ContractError("negative view radius");
}

bool GraphBallView::contains(NodeId w) const {
  if (w == u_ || w == v_) return true;
  if (!g_.valid_node(w) || radius_ == 0) return false;
  if (radius_ == 1) return g_.has_edge(u_, w) || g_.has_edge(v_, w);
  if (!members_) {
    const auto nodes = ball_nodes(g_, u_, v_, radius_);
    members_ = std::make_unique<std::unordered_set<NodeId>>(nodes.begin(), nodes.end());
  }
  return members_->contains(w);
}

std::vector<NodeId> GraphBallView::neighbors(NodeId w) const {
  require_inside(w);
  const auto nb = g_.neighbors(w);
  if (radius_ >= 1 && (w == u_ || w == v_)) return {nb.begin(), nb.end()};
  std::vector<NodeId> out;
  for (NodeId x : nb) {
    if (contains(x)) out.push_back(x);
  }
  return out;
}

std::size_t GraphBallView::degree(NodeId w) const {
  require_inside(w);
  if (radius_ >= 1 && (w == u_ || w == v_)) return g_.degree(w);
  return neighbors(w).size();
}

bool GraphBallView::has_edge(NodeId a, NodeId b) const {
  require_inside(a);
  require_inside(b);
  return a != b && g_.has_edge(a, b);
}

std::size_t GraphBallView::common_neighbor_count() const {
  if (radius_ == 0) return 0;
  return tnd::common_neighbors(g_, u_, v_);
}

std::size_t GraphBallView::common_neighbor_edge_count() const {
  if (radius_ == 0) return 0;
  return edges_among_common_neighbors(g_, u_, v_);
}

std::vector<NodeId> GraphBallView::common_neighbors() const {
  if (radius_ == 0) return {};
  return common_neighbor_list(g_, u_, v_);
}

FragmentView::FragmentView(const BallFragment& fragment, int radius)
    : frag_(fragment), radius_(radius) {}

std::vector<NodeId> FragmentView::neighbors(NodeId w) const {
  require_inside(w);
  const auto nb = frag_.graph.neighbors(w);
  return {nb.begin(), nb.end()};
}

std::size_t FragmentView::degree(NodeId w) const {
  require_inside(w);
  return frag_.graph.degree(w);
}

bool FragmentView::has_edge(NodeId a, NodeId b) const {
  require_inside(a);
  require_inside(b);
  return a != b && frag_.graph.has_edge(a, b);
}

NodeId FragmentView::label(NodeId w) const {
  return w < frag_.to_original.size() ? frag_.to_original[w] : w;
}

}  // namespace tnd
