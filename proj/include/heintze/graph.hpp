#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "heintze/spectral.hpp"

namespace heintze {

struct DirectedGraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // 0-based (source, target)

  std::size_t edge_count() const { return edges.size(); }
};

/// Simple: no loops, indices in range, no edge repeated in either direction.
inline void validate_graph(const DirectedGraph& g) {
  if (g.vertex_count == 0) throw Error(ErrorCode::InvalidGraph, "graph needs at least one vertex");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    auto [u, v] = g.edges[k];
    if (u >= g.vertex_count || v >= g.vertex_count)
      throw Error(ErrorCode::InvalidGraph, {k}, "edge endpoint out of range");
    if (u == v) throw Error(ErrorCode::InvalidGraph, {k}, "loop");
    if (!seen.insert(std::minmax(u, v)).second) throw Error(ErrorCode::InvalidGraph, {k}, "duplicate edge");
  }
}

/// Basis X_1..X_p, Z_1..Z_q with [X_i, X_j] = Z_k for the edge e_k = (v_i, v_j).
inline NilpotentLieAlgebra build_algebra(const DirectedGraph& g) {
  validate_graph(g);
  const std::size_t p = g.vertex_count, q = g.edges.size();
  StructureTensor t(p + q);
  for (std::size_t k = 0; k < q; ++k) {
    auto [i, j] = g.edges[k];
    t.at(i, j, p + k) = 1;
    t.at(j, i, p + k) = -1;
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < p; ++i) labels.push_back("X" + std::to_string(i + 1));
  for (std::size_t k = 0; k < q; ++k) labels.push_back("Z" + std::to_string(k + 1));
  return validate_algebra(t, std::move(labels));
}

/// Diagonal derivation: weight a_i on X_i, a_i + a_j on Z_k for e_k = (v_i, v_j).
inline Matrix weight_matrix(const DirectedGraph& g, const std::vector<Rational>& weights) {
  validate_graph(g);
  if (weights.size() != g.vertex_count) throw Error(ErrorCode::DimensionMismatch, "one weight per vertex");
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] <= 0) throw Error(ErrorCode::InvalidInput, {i}, "vertex weights must be positive");
  Vector diag(weights);
  for (auto [i, j] : g.edges) diag.push_back(weights[i] + weights[j]);
  return Matrix::diagonal(diag);
}

inline Derivation derivation_from_weights(std::shared_ptr<const NilpotentLieAlgebra> a, const DirectedGraph& g,
                                          const std::vector<Rational>& weights) {
  return validate_derivation(std::move(a), weight_matrix(g, weights));
}

inline Derivation derivation_from_weights(const DirectedGraph& g, const std::vector<Rational>& weights) {
  return derivation_from_weights(std::make_shared<const NilpotentLieAlgebra>(build_algebra(g)), g, weights);
}

inline constexpr std::size_t kMaxIsomorphismVertices = 12;

/// Vertex permutation (witness[i] = image of vertex i) carrying the
/// undirected edge set of g1 onto that of g2, if one exists.
inline std::optional<std::vector<std::size_t>> graph_isomorphism(const DirectedGraph& g1, const DirectedGraph& g2) {
  validate_graph(g1);
  validate_graph(g2);
  if (g1.vertex_count > kMaxIsomorphismVertices || g2.vertex_count > kMaxIsomorphismVertices)
    throw Error(ErrorCode::TooLarge, "isomorphism search is capped at 12 vertices");
  if (g1.vertex_count != g2.vertex_count || g1.edges.size() != g2.edges.size()) return std::nullopt;
  const std::size_t p = g1.vertex_count;

  auto adjacency = [p](const DirectedGraph& g) {
    std::vector<std::vector<bool>> adj(p, std::vector<bool>(p, false));
    for (auto [u, v] : g.edges) adj[u][v] = adj[v][u] = true;
    return adj;
  };
  const auto a1 = adjacency(g1), a2 = adjacency(g2);
  auto degrees = [p](const std::vector<std::vector<bool>>& adj) {
    std::vector<std::size_t> d(p, 0);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) d[i] += adj[i][j];
    return d;
  };
  const auto d1 = degrees(a1), d2 = degrees(a2);
  {
    auto s1 = d1, s2 = d2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return std::nullopt;
  }

  std::vector<std::size_t> map(p, p);
  std::vector<bool> used(p, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
    if (i == p) return true;
    for (std::size_t c = 0; c < p; ++c) {
      if (used[c] || d1[i] != d2[c]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = a1[i][j] == a2[c][map[j]];
      if (!ok) continue;
      map[i] = c;
      used[c] = true;
      if (extend(i + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;

  std::set<std::pair<std::size_t, std::size_t>> e1, e2;
  for (auto [u, v] : g1.edges) e1.insert(std::minmax(map[u], map[v]));
  for (auto [u, v] : g2.edges) e2.insert(std::minmax(u, v));
  if (e1 != e2) throw std::logic_error("isomorphism witness failed verification");
  return map;
}

inline bool graph_isomorphic(const DirectedGraph& g1, const DirectedGraph& g2) {
  return graph_isomorphism(g1, g2).has_value();
}

}  // namespace heintze
