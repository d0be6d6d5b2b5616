#pragma once

#include <cstdint>
#include <vector>

#include "tnd/graph.hpp"

namespace tnd {

/// Static node attributes of the social model: niceness n(v), extroversion
/// x(v) and the (symmetric) enemy sets.
struct SocialProfile {
  std::vector<double> niceness;
  std::vector<std::uint32_t> extroversion;
  std::vector<std::vector<NodeId>> enemies;  // sorted per node

  std::size_t size() const { return niceness.size(); }
  bool is_enemy(NodeId u, NodeId v) const;
  void add_enemy(NodeId u, NodeId v);

  /// Throws ConfigError on negative niceness, size mismatches, self-enmity or
  /// asymmetric enmity.
  void validate() const;

  /// n nodes, niceness 0, extroversion 0, no enemies.
  static SocialProfile uniform(std::size_t n, double niceness = 0.0, std::uint32_t extroversion = 0);
};

}  // namespace tnd
