#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tnd/graph.hpp"
#include "tnd/rule110.hpp"
#include "tnd/social_profile.hpp"

namespace tnd {

/// Edge-list text: optional `nodes N` header, one `u v` per line, `#` comments.
/// Without a header the node count is the largest id plus one.
DynGraph read_edge_list(std::istream& in, const std::string& source = "<stream>");
DynGraph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const DynGraph& g);
void write_edge_list_file(const std::string& path, const DynGraph& g);

/// Scripted scheduler file: one round per line, `u-v` tokens, blank line =
/// empty round, lines starting with `#` skipped.
std::vector<std::vector<Pair>> read_script(std::istream& in, const std::string& source = "<stream>");
std::vector<std::vector<Pair>> read_script_file(const std::string& path);

/// Social profile: `id niceness extroversion` per node, `enemy u v` per pair.
SocialProfile read_profile(std::istream& in, const std::string& source = "<stream>");
SocialProfile read_profile_file(const std::string& path);

/// `id label` per line for every assembly node.
void write_labels_file(const std::string& path, const rule110::GadgetMap& map);

}  // namespace tnd
