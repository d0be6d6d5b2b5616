#pragma once
// Brute-force reference implementations over adjacency matrices. They share
// no code with the library beyond the DynGraph accessors.

#include <algorithm>
#include <cstdint>
#include <queue>
#include <random>
#include <vector>

#include "tnd/graph.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<char>>;

inline Matrix matrix(const tnd::DynGraph& g) {
  const std::size_t n = g.node_count();
  Matrix a(n, std::vector<char>(n, 0));
  for (tnd::NodeId u = 0; u < n; ++u) {
    for (tnd::NodeId w : g.neighbors(u)) a[u][w] = 1;
  }
  return a;
}

inline int degree(const Matrix& a, std::size_t u) {
  int d = 0;
  for (char c : a[u]) d += c;
  return d;
}

inline int cn(const Matrix& a, std::size_t u, std::size_t v) {
  int c = 0;
  for (std::size_t w = 0; w < a.size(); ++w) c += (w != u && w != v && a[u][w] && a[v][w]);
  return c;
}

inline int ce(const Matrix& a, std::size_t u, std::size_t v) {
  int c = 0;
  const std::size_t n = a.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const bool xin = x != u && x != v && a[u][x] && a[v][x];
      const bool yin = y != u && y != v && a[u][y] && a[v][y];
      c += xin && yin && a[x][y];
    }
  }
  return c;
}

// Hop distance from the nearer of u, v; -1 when unreachable.
inline std::vector<int> distance_to_pair(const Matrix& a, std::size_t u, std::size_t v) {
  std::vector<int> d(a.size(), -1);
  std::queue<std::size_t> q;
  d[u] = 0;
  d[v] = 0;
  q.push(u);
  q.push(v);
  while (!q.empty()) {
    const std::size_t x = q.front();
    q.pop();
    for (std::size_t y = 0; y < a.size(); ++y) {
      if (a[x][y] && d[y] < 0) {
        d[y] = d[x] + 1;
        q.push(y);
      }
    }
  }
  return d;
}

inline tnd::DynGraph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  tnd::DynGraph g(n);
  for (tnd::NodeId u = 0; u < n; ++u) {
    for (tnd::NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

inline tnd::DynGraph from_matrix(const Matrix& a) {
  tnd::DynGraph g(a.size());
  for (tnd::NodeId u = 0; u < a.size(); ++u) {
    for (tnd::NodeId v = u + 1; v < a.size(); ++v) {
      if (a[u][v]) g.add_edge(u, v);
    }
  }
  return g;
}

inline tnd::DynGraph with_edges(std::size_t n, std::initializer_list<std::pair<int, int>> edges) {
  tnd::DynGraph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline tnd::DynGraph clique(std::size_t n) {
  tnd::DynGraph g(n);
  for (tnd::NodeId u = 0; u < n; ++u) {
    for (tnd::NodeId v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

inline tnd::DynGraph path(std::size_t n) {
  tnd::DynGraph g(n);
  for (tnd::NodeId u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
  return g;
}

inline tnd::DynGraph ring(std::size_t n) {
  tnd::DynGraph g = path(n);
  g.add_edge(0, static_cast<tnd::NodeId>(n - 1));
  return g;
}

// Star on n nodes centered at 0.
inline tnd::DynGraph star(std::size_t n) {
  tnd::DynGraph g(n);
  for (tnd::NodeId u = 1; u < n; ++u) g.add_edge(0, u);
  return g;
}

}  // namespace oracle
