#pragma once

#include <cstddef>
#include <memory>
#include <unordered_set>
#include <vector>

#include "tnd/graph.hpp"

namespace tnd {

/// Read-only view of the induced subgraph around an interacting pair.
///
/// This is the only graph access a potential receives. Every query is
/// restricted to nodes inside the ball; asking about a node outside it throws
/// ContractError, which is how the locality contract is enforced.
class LocalView {
 public:
  virtual ~LocalView() = default;

  virtual NodeId first() const = 0;
  virtual NodeId second() const = 0;
  virtual int radius() const = 0;

  virtual bool contains(NodeId w) const = 0;
  /// Neighbors of w inside the ball, sorted. Throws if w is outside the ball.
  virtual std::vector<NodeId> neighbors(NodeId w) const = 0;
  /// Ball-restricted degree; for the two centers of a ball with radius >= 1 this
  /// equals the true degree.
  virtual std::size_t degree(NodeId w) const = 0;
  virtual bool has_edge(NodeId a, NodeId b) const = 0;

  /// Stable external label of a node (its id in the full graph). Potentials use
  /// it only to look up static node attributes.
  virtual NodeId label(NodeId w) const { return w; }

  /// |N(first) ∩ N(second)|
  virtual std::size_t common_neighbor_count() const;
  /// Edges among N(first) ∩ N(second).
  virtual std::size_t common_neighbor_edge_count() const;
  virtual std::vector<NodeId> common_neighbors() const;

  bool centers_adjacent() const { return has_edge(first(), second()); }

 protected:
  void require_inside(NodeId w) const;
};

/// Lazy ball over a full DynGraph. Membership for radius <= 1 is answered with
/// adjacency lookups; larger radii materialize the node set on first use.
class GraphBallView final : public LocalView {
 public:
  GraphBallView(const DynGraph& g, NodeId u, NodeId v, int radius);

  NodeId first() const override { return u_; }
  NodeId second() const override { return v_; }
  int radius() const override { return radius_; }

  bool contains(NodeId w) const override;
  std::vector<NodeId> neighbors(NodeId w) const override;
  std::size_t degree(NodeId w) const override;
  bool has_edge(NodeId a, NodeId b) const override;

  std::size_t common_neighbor_count() const override;
  std::size_t common_neighbor_edge_count() const override;
  std::vector<NodeId> common_neighbors() const override;

  const DynGraph& graph() const { return g_; }

 private:
  const DynGraph& g_;
  NodeId u_;
  NodeId v_;
  int radius_;
  mutable std::unique_ptr<std::unordered_set<NodeId>> members_;
};

/// View over a materialized ball fragment; labels map back to original ids.
class FragmentView final : public LocalView {
 public:
  FragmentView(const BallFragment& fragment, int radius);

  NodeId first() const override { return frag_.first; }
  NodeId second() const override { return frag_.second; }
  int radius() const override { return radius_; }

  bool contains(NodeId w) const override { return w < frag_.graph.node_count(); }
  std::vector<NodeId> neighbors(NodeId w) const override;
  std::size_t degree(NodeId w) const override;
  bool has_edge(NodeId a, NodeId b) const override;
  NodeId label(NodeId w) const override;

 private:
  const BallFragment& frag_;
  int radius_;
};

}  // namespace tnd
