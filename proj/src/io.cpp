#include "tnd/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace tnd {

namespace {

std::string where(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

template <typename T>
T parse_number(const std::string& token, const std::string& at) {
  T value{};
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) throw InputError(at + "expected a number, got '" + token + "'");
  return value;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

}  // namespace

DynGraph read_edge_list(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> declared;
  std::vector<std::pair<Pair, std::size_t>> edges;
  std::size_t max_id = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip_comment(line);
    std::istringstream ls(body);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string at = where(source, lineno);
    if (tok[0] == "nodes") {
      if (tok.size() != 2) throw InputError(at + "expected 'nodes N'");
      if (declared || !edges.empty()) throw InputError(at + "'nodes' header must come first");
      declared = parse_number<std::size_t>(tok[1], at);
      continue;
    }
    if (tok.size() != 2) throw InputError(at + "expected 'u v'");
    const auto u = parse_number<NodeId>(tok[0], at);
    const auto v = parse_number<NodeId>(tok[1], at);
    if (u == v) throw InputError(at + "self loop on node " + std::to_string(u));
    edges.emplace_back(Pair(u, v), lineno);
    max_id = std::max<std::size_t>(max_id, std::max(u, v));
    any = true;
  }
  const std::size_t n = declared ? *declared : (any ? max_id + 1 : 0);
  DynGraph g(n);
  for (const auto& [p, ln] : edges) {
    if (p.second >= n) {
      throw InputError(where(source, ln) + "node id " + std::to_string(p.second) +
                       " out of range (nodes " + std::to_string(n) + ")");
    }
    if (!g.add_edge(p.first, p.second)) {
      throw InputError(where(source, ln) + "duplicate edge " + std::to_string(p.first) + " " +
                       std::to_string(p.second));
    }
  }
  return g;
}

DynGraph read_edge_list_file(const std::string& path) {
  auto in = open_in(path);
  return read_edge_list(in, path);
}

void write_edge_list(std::ostream& out, const DynGraph& g) {
  out << "nodes " << g.node_count() << '\n';
  for (const Pair& p : g.edges()) out << p.first << ' ' << p.second << '\n';
}

void write_edge_list_file(const std::string& path, const DynGraph& g) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  write_edge_list(out, g);
}

std::vector<std::vector<Pair>> read_script(std::istream& in, const std::string& source) {
  std::vector<std::vector<Pair>> rounds;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '#') continue;
    const std::string at = where(source, lineno);
    std::vector<Pair> round;
    std::istringstream ls(line);
    for (std::string t; ls >> t;) {
      const auto dash = t.find('-');
      if (dash == std::string::npos) throw InputError(at + "expected 'u-v', got '" + t + "'");
      const auto u = parse_number<NodeId>(t.substr(0, dash), at);
      const auto v = parse_number<NodeId>(t.substr(dash + 1), at);
      if (u == v) throw InputError(at + "self pair " + t);
      round.emplace_back(u, v);
    }
    rounds.push_back(std::move(round));
  }
  return rounds;
}

std::vector<std::vector<Pair>> read_script_file(const std::string& path) {
  auto in = open_in(path);
  return read_script(in, path);
}

SocialProfile read_profile(std::istream& in, const std::string& source) {
  struct Row {
    double niceness;
    std::uint32_t extroversion;
    std::size_t line;
  };
  std::vector<std::optional<Row>> rows;
  std::vector<std::pair<Pair, std::size_t>> enemies;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(strip_comment(line));
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string at = where(source, lineno);
    if (tok[0] == "enemy") {
      if (tok.size() != 3) throw InputError(at + "expected 'enemy u v'");
      enemies.emplace_back(Pair(parse_number<NodeId>(tok[1], at), parse_number<NodeId>(tok[2], at)),
                           lineno);
      continue;
    }
    if (tok.size() != 3) throw InputError(at + "expected 'id niceness extroversion'");
    const auto id = parse_number<NodeId>(tok[0], at);
    double nice;
    try {
      std::size_t used = 0;
      nice = std::stod(tok[1], &used);
      if (used != tok[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InputError(at + "bad niceness '" + tok[1] + "'");
    }
    const auto x = parse_number<std::uint32_t>(tok[2], at);
    if (id >= rows.size()) rows.resize(id + 1);
    if (rows[id]) throw InputError(at + "node " + std::to_string(id) + " listed twice");
    rows[id] = Row{nice, x, lineno};
  }
  SocialProfile p;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i]) throw InputError(source + ": node " + std::to_string(i) + " missing from profile");
    p.niceness.push_back(rows[i]->niceness);
    p.extroversion.push_back(rows[i]->extroversion);
  }
  p.enemies.assign(p.size(), {});
  for (const auto& [e, ln] : enemies) {
    if (e.second >= p.size()) {
      throw InputError(where(source, ln) + "enemy id out of range");
    }
    if (e.first == e.second) throw InputError(where(source, ln) + "node cannot be its own enemy");
    p.add_enemy(e.first, e.second);
  }
  p.validate();
  return p;
}

SocialProfile read_profile_file(const std::string& path) {
  auto in = open_in(path);
  return read_profile(in, path);
}

void write_labels_file(const std::string& path, const rule110::GadgetMap& map) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  for (NodeId u = 0; u < map.labels.size(); ++u) out << u << ' ' << map.label(u) << '\n';
}

}  // namespace tnd
