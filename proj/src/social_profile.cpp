#include "tnd/social_profile.hpp"

#include <algorithm>
#include <cmath>

namespace tnd {

bool SocialProfile::is_enemy(NodeId u, NodeId v) const {
  if (u >= enemies.size()) return false;
  return std::binary_search(enemies[u].begin(), enemies[u].end(), v);
}

void SocialProfile::add_enemy(NodeId u, NodeId v) {
  if (u >= size() || v >= size()) {
    throw InputError("enemy pair " + std::to_string(u) + "-" + std::to_string(v) +
                     " outside profile of " + std::to_string(size()) + " nodes");
  }
  if (u == v) throw ConfigError("node " + std::to_string(u) + " cannot be its own enemy");
  if (enemies.size() < size()) enemies.resize(size());
  for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
    auto& list = enemies[a];
    auto it = std::lower_bound(list.begin(), list.end(), b);
    if (it == list.end() || *it != b) list.insert(it, b);
  }
}

void SocialProfile::validate() const {
  if (extroversion.size() != size()) {
    throw ConfigError("profile has " + std::to_string(size()) + " niceness values but " +
                      std::to_string(extroversion.size()) + " extroversion values");
  }
  if (enemies.size() > size()) throw ConfigError("enemy table larger than the profile");
  for (NodeId u = 0; u < size(); ++u) {
    if (!std::isfinite(niceness[u]) || niceness[u] < 0) {
      throw ConfigError("niceness of node " + std::to_string(u) +
                        " must be a nonnegative number (got " + std::to_string(niceness[u]) + ")");
    }
  }
  for (NodeId u = 0; u < enemies.size(); ++u) {
    if (!std::is_sorted(enemies[u].begin(), enemies[u].end())) {
      throw ConfigError("enemy list of node " + std::to_string(u) + " is not sorted");
    }
    for (NodeId v : enemies[u]) {
      if (v >= size()) throw ConfigError("enemy id " + std::to_string(v) + " out of range");
      if (v == u) throw ConfigError("node " + std::to_string(u) + " is its own enemy");
      if (!is_enemy(v, u)) {
        throw ConfigError("enmity must be symmetric: " + std::to_string(u) + " lists " +
                          std::to_string(v) + " but not the reverse");
      }
    }
  }
}

SocialProfile SocialProfile::uniform(std::size_t n, double niceness, std::uint32_t extroversion) {
  SocialProfile p;
  p.niceness.assign(n, niceness);
  p.extroversion.assign(n, extroversion);
  p.enemies.assign(n, {});
  return p;
}

}  // namespace tnd
