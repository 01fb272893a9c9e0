#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "heintze/graph.hpp"
#include "heintze/invariants.hpp"

namespace heintze::corpus {

inline DirectedGraph triangle_graph() { return {3, {{0, 1}, {1, 2}, {0, 2}}}; }
inline DirectedGraph two_edges_graph() { return {4, {{0, 1}, {2, 3}}}; }

inline std::vector<Rational> ints(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

/// Triangle graph, weights (1,2,3): eigenvalues 1,2,3,3,5,4.
inline HeintzeData gamma1() {
  const auto g = triangle_graph();
  return make_heintze(derivation_from_weights(g, ints({1, 2, 3})));
}

/// Two disjoint edges, weights (1,2,3,3): eigenvalues 1,2,3,3,3,6.
inline HeintzeData gamma2() {
  const auto g = two_edges_graph();
  return make_heintze(derivation_from_weights(g, ints({1, 2, 3, 3})));
}

/// Heisenberg algebra of dimension 2n+1, basis X1..Xn, Y1..Yn, Z, [Xi,Yi] = Z.
inline NilpotentLieAlgebra heisenberg(std::size_t n) {
  StructureTensor t(2 * n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    t.at(i, n + i, 2 * n) = 1;
    t.at(n + i, i, 2 * n) = -1;
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("X" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n; ++i) labels.push_back("Y" + std::to_string(i + 1));
  labels.push_back("Z");
  if (n == 1) labels = {"X", "Y", "Z"};
  return validate_algebra(t, std::move(labels));
}

inline NilpotentLieAlgebra abelian(std::size_t n) { return validate_algebra(StructureTensor(n)); }

inline Matrix rows(std::initializer_list<std::initializer_list<long>> rs) {
  std::vector<Vector> out;
  std::size_t cols = 0;
  for (auto r : rs) {
    Vector v;
    for (long x : r) v.emplace_back(x);
    cols = v.size();
    out.push_back(std::move(v));
  }
  return Matrix::from_rows(out, cols);
}

inline HeintzeData heisenberg_diag() { return make_heintze(heisenberg(1), Matrix::diagonal(ints({1, 1, 2}))); }

/// X -> X, Y -> X + Y, Z -> 2Z (one Jordan block of size 2 at 1).
inline Matrix heisenberg_block_matrix() { return rows({{1, 1, 0}, {0, 1, 0}, {0, 0, 2}}); }

inline HeintzeData heisenberg_block() { return make_heintze(heisenberg(1), heisenberg_block_matrix()); }

/// On the 5-dimensional Heisenberg algebra (X1,X2,Y1,Y2,Z):
/// X2 -> X2 + X1, Y1 -> Y1 - Y2, Z -> 2Z; two blocks of size 2 at 1.
inline Matrix k2_block_matrix() {
  return rows({{1, 1, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, -1, 1, 0}, {0, 0, 0, 0, 2}});
}

inline HeintzeData k2_block() { return make_heintze(heisenberg(2), k2_block_matrix()); }

/// Filiform algebra [e1, ei] = e_{i+1}, class n-1, with derivation diag(1..n).
inline HeintzeData filiform(std::size_t n) {
  StructureTensor t(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    t.at(0, i, i + 1) = 1;
    t.at(i, 0, i + 1) = -1;
  }
  Vector d;
  for (std::size_t i = 0; i < n; ++i) d.emplace_back(static_cast<long>(i + 1));
  return make_heintze(validate_algebra(t), Matrix::diagonal(d));
}

/// Strictly upper triangular n x n matrices, basis E_ij (i < j) ordered by
/// row, graded by j - i.
inline HeintzeData upper_triangular(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) idx.emplace_back(i, j);
  const std::size_t m = idx.size();
  auto find = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < m; ++k)
      if (idx[k] == std::make_pair(i, j)) return k;
    return m;
  };
  StructureTensor t(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      auto [i, j] = idx[a];
      auto [k, l] = idx[b];
      // [E_ij, E_kl] = delta_jk E_il - delta_li E_kj
      if (j == k) t.at(a, b, find(i, l)) += 1;
      if (l == i) t.at(a, b, find(k, j)) -= 1;
    }
  std::vector<std::string> labels;
  Vector d;
  for (auto [i, j] : idx) {
    labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    d.emplace_back(static_cast<long>(j - i));
  }
  return make_heintze(validate_algebra(t, labels), Matrix::diagonal(d));
}

/// Structure constants in the basis f_j = sum_i p(i, j) e_i.
inline NilpotentLieAlgebra change_basis(const NilpotentLieAlgebra& a, const Matrix& p) {
  const std::size_t n = a.dim();
  const Matrix p_inv = inverse(p);
  StructureTensor t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector br = p_inv * a.bracket(p.column(i), p.column(j));
      for (std::size_t k = 0; k < n; ++k) t.at(i, j, k) = br[k];
    }
  return validate_algebra(t);
}

/// The same Heintze group presented in another basis.
inline HeintzeData change_basis(const HeintzeData& h, const Matrix& p) {
  return make_heintze(change_basis(*h.algebra, p), inverse(p) * h.matrix() * p);
}

/// Unit upper triangular times unit lower triangular with small integer
/// entries: always invertible.
inline Matrix random_invertible(std::size_t n, std::mt19937_64& rng, long spread = 2) {
  auto pick = [&] { return static_cast<long>(rng() % static_cast<std::uint64_t>(2 * spread + 1)) - spread; };
  Matrix u = Matrix::identity(n), l = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      u(i, j) = pick();
      l(j, i) = pick();
    }
  Matrix p = u * l;
  // a random permutation of the columns keeps it invertible
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    for (std::size_t r = 0; r < n; ++r) std::swap(p(r, i - 1), p(r, j));
  }
  return p;
}

/// Random simple graph on 2..max_vertices vertices with random weights in
/// {1..max_weight} (occasionally halves).
inline HeintzeData random_graph_instance(std::mt19937_64& rng, std::size_t max_vertices = 6, long max_weight = 5,
                                         DirectedGraph* graph_out = nullptr) {
  DirectedGraph g;
  g.vertex_count = 2 + static_cast<std::size_t>(rng() % (max_vertices - 1));
  for (std::size_t i = 0; i < g.vertex_count; ++i)
    for (std::size_t j = i + 1; j < g.vertex_count; ++j)
      if (rng() % 2) g.edges.push_back(rng() % 2 ? std::make_pair(i, j) : std::make_pair(j, i));
  std::vector<Rational> w;
  for (std::size_t i = 0; i < g.vertex_count; ++i) {
    long num = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(max_weight));
    w.push_back(rng() % 4 == 0 ? make_rational(num, 2) : Rational(num));
  }
  if (graph_out) *graph_out = g;
  return make_heintze(derivation_from_weights(g, w));
}

struct Entry {
  std::string name;
  HeintzeData data;
};

/// The worked examples and the small families used by the self-check.
inline std::vector<Entry> builtin() {
  std::vector<Entry> out;
  out.push_back({"gamma1", gamma1()});
  out.push_back({"gamma2", gamma2()});
  out.push_back({"heisenberg-diag", heisenberg_diag()});
  out.push_back({"heisenberg-block", heisenberg_block()});
  out.push_back({"k2-block", k2_block()});
  out.push_back({"k2-diag", make_heintze(heisenberg(2), Matrix::diagonal(ints({1, 2, 3, 2, 4})))});
  out.push_back({"abelian-3", make_heintze(abelian(3), Matrix::identity(3))});
  out.push_back({"abelian-2-block", make_heintze(abelian(2), rows({{1, 1}, {0, 1}}))});
  out.push_back({"filiform-5", filiform(5)});
  out.push_back({"upper-triangular-4", upper_triangular(4)});
  return out;
}

}  // namespace heintze::corpus
