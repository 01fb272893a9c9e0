#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "heintze/matrix.hpp"
#include "heintze/subspace.hpp"

namespace heintze {

/// Dense n x n x n tensor: at(i,j,k) is the coefficient of e_k in [e_i,e_j].
struct StructureTensor {
  std::size_t dim = 0;
  std::vector<Rational> coefficients;

  explicit StructureTensor(std::size_t n = 0) : dim(n), coefficients(n * n * n) {}

  Rational& at(std::size_t i, std::size_t j, std::size_t k) { return coefficients[(i * dim + j) * dim + k]; }
  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const {
    return coefficients[(i * dim + j) * dim + k];
  }
};

/// Sparse list of nonzero structure constants over any scalar type; the
/// bracket kernel shared by exact and floating-point code paths.
template <class Scalar>
struct SparseStructure {
  struct Entry {
    std::size_t i, j, k;
    Scalar value;
  };
  std::size_t dim = 0;
  std::vector<Entry> entries;  // all ordered pairs i != j

  std::vector<Scalar> bracket(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
    std::vector<Scalar> out(dim, Scalar(0));
    for (const auto& e : entries) {
      if (x[e.i] == 0 || y[e.j] == 0) continue;
      out[e.k] += e.value * x[e.i] * y[e.j];
    }
    return out;
  }
};

class NilpotentLieAlgebra;
NilpotentLieAlgebra validate_algebra(const StructureTensor& tensor, std::vector<std::string> labels = {});

/// Finite-dimensional nilpotent Lie algebra given by rational structure
/// constants. Instances only come out of validate_algebra, so antisymmetry,
/// Jacobi and nilpotency always hold.
class NilpotentLieAlgebra {
 public:
  std::size_t dim() const noexcept { return tensor_.dim; }
  std::size_t nilpotency_class() const noexcept { return class_; }
  const StructureTensor& tensor() const noexcept { return tensor_; }
  const SparseStructure<Rational>& sparse() const noexcept { return sparse_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  bool is_abelian() const noexcept { return sparse_.entries.empty(); }

  const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const { return tensor_.at(i, j, k); }

  Vector bracket(const Vector& x, const Vector& y) const {
    if (x.size() != dim() || y.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "bracket operands");
    return sparse_.bracket(x, y);
  }

  Vector bracket_basis(std::size_t i, std::size_t j) const {
    Vector out(dim());
    for (std::size_t k = 0; k < dim(); ++k) out[k] = tensor_.at(i, j, k);
    return out;
  }

  /// Matrix of ad_x (columns are [x, e_j]).
  Matrix ad(const Vector& x) const {
    Matrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) m.set_column(j, bracket(x, unit_vector(dim(), j)));
    return m;
  }

  SparseStructure<double> numeric() const {
    SparseStructure<double> s;
    s.dim = dim();
    for (const auto& e : sparse_.entries) s.entries.push_back({e.i, e.j, e.k, e.value.get_d()});
    return s;
  }

 private:
  friend NilpotentLieAlgebra validate_algebra(const StructureTensor&, std::vector<std::string>);
  NilpotentLieAlgebra() = default;

  StructureTensor tensor_;
  SparseStructure<Rational> sparse_;
  std::vector<std::string> labels_;
  std::size_t class_ = 0;
};

inline Vector bracket(const NilpotentLieAlgebra& a, const Vector& x, const Vector& y) { return a.bracket(x, y); }

/// Smallest subalgebra containing the generators. Every round brackets all
/// pairs of the current basis and stops at the first round adding nothing.
inline Subspace lie_span(const NilpotentLieAlgebra& a, const std::vector<Vector>& generators) {
  for (const auto& g : generators)
    if (g.size() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "generator dimension");
  Subspace current = Subspace::span(a.dim(), generators);
  while (true) {
    auto basis = current.basis();
    auto gens = basis;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i + 1; j < basis.size(); ++j) gens.push_back(a.bracket(basis[i], basis[j]));
    Subspace next = Subspace::span(a.dim(), gens);
    if (next == current) return current;
    current = std::move(next);
  }
}

inline Subspace lie_span(const NilpotentLieAlgebra& a, const Subspace& s) { return lie_span(a, s.basis()); }

/// [s, t] as a subspace.
inline Subspace bracket_span(const NilpotentLieAlgebra& a, const Subspace& s, const Subspace& t) {
  std::vector<Vector> gens;
  auto sb = s.basis();
  auto tb = t.basis();
  for (const auto& x : sb)
    for (const auto& y : tb) gens.push_back(a.bracket(x, y));
  return Subspace::span(a.dim(), gens);
}

inline bool is_subalgebra(const NilpotentLieAlgebra& a, const Subspace& h) {
  return h.contains(bracket_span(a, h, h));
}

inline bool is_ideal(const NilpotentLieAlgebra& a, const Subspace& k) {
  return k.contains(bracket_span(a, Subspace::full(a.dim()), k));
}

inline Subspace center(const NilpotentLieAlgebra& a) {
  const std::size_t n = a.dim();
  // x is central iff sum_i x_i c[i][j][k] = 0 for every (j, k).
  Matrix eqs(n * n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) eqs(j * n + k, i) = a.constant(i, j, k);
  return Subspace::span(n, kernel(eqs));
}

inline Subspace derived_subalgebra(const NilpotentLieAlgebra& a) {
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) gens.push_back(a.bracket_basis(i, j));
  return Subspace::span(a.dim(), gens);
}

/// g, [g,g], [g,[g,g]], ... ending with the zero subspace.
inline std::vector<Subspace> lower_central_series(const NilpotentLieAlgebra& a) {
  std::vector<Subspace> series{Subspace::full(a.dim())};
  const Subspace full = Subspace::full(a.dim());
  while (!series.back().is_zero()) series.push_back(bracket_span(a, full, series.back()));
  return series;
}

/// {X : [X, h] in h}.
inline Subspace normalizer(const NilpotentLieAlgebra& a, const Subspace& h) {
  if (h.ambient_dim() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "subspace dimension");
  if (!is_subalgebra(a, h)) throw Error(ErrorCode::NotASubalgebra, "normalizer requires a subalgebra");
  const std::size_t n = a.dim();
  const auto functionals = h.annihilator();
  if (functionals.empty()) return Subspace::full(n);
  std::vector<Vector> rows;
  for (const auto& b : h.basis()) {
    Matrix right_mult(n, n);  // X -> [X, b]
    for (std::size_t i = 0; i < n; ++i) right_mult.set_column(i, a.bracket(unit_vector(n, i), b));
    for (const auto& f : functionals) {
      Vector row(n, Rational(0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) row[i] += f[k] * right_mult(k, i);
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) return Subspace::full(n);
  return Subspace::span(n, kernel(Matrix::from_rows(rows, n)));
}

/// h = h_0 < h_1 < ... < h_k = a with h_{i+1} the normalizer of h_i.
/// The chain length is size() - 1.
inline std::vector<Subspace> normalizer_chain(const NilpotentLieAlgebra& a, const Subspace& h) {
  std::vector<Subspace> chain{h};
  while (!chain.back().is_full()) {
    Subspace next = normalizer(a, chain.back());
    if (next == chain.back())
      throw Error(ErrorCode::NotNilpotent, "normalizer of a proper subalgebra did not grow");
    chain.push_back(std::move(next));
  }
  return chain;
}

/// a / k with a chosen complement. projection is (dim a/k) x n, section is
/// n x (dim a/k); projection * section = identity.
struct QuotientPresentation {
  NilpotentLieAlgebra algebra;
  Matrix projection;
  Matrix section;
  Subspace kernel;
};

inline QuotientPresentation quotient(const NilpotentLieAlgebra& a, const Subspace& k);

/// Matrix of the map induced on a/k by an endomorphism preserving k.
inline Matrix induced_on_quotient(const Matrix& m, const QuotientPresentation& q) {
  if (!is_invariant(m, q.kernel)) throw Error(ErrorCode::NotAnIdeal, "map does not preserve the kernel");
  return q.projection * m * q.section;
}

// ---------------------------------------------------------------------------

inline NilpotentLieAlgebra validate_algebra(const StructureTensor& t, std::vector<std::string> labels) {
  const std::size_t n = t.dim;
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "algebra dimension must be positive");
  if (t.coefficients.size() != n * n * n) throw Error(ErrorCode::DimensionMismatch, "tensor is not n x n x n");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (t.at(i, j, k) != -t.at(j, i, k)) throw Error(ErrorCode::AntisymmetryViolation, {i, j, k});

  NilpotentLieAlgebra a;
  a.tensor_ = t;
  a.sparse_.dim = n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (t.at(i, j, k) != 0) a.sparse_.entries.push_back({i, j, k, t.at(i, j, k)});

  // [e_i,[e_j,e_l]] + [e_j,[e_l,e_i]] + [e_l,[e_i,e_j]] = 0
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t l = j + 1; l < n; ++l) {
        Vector ei = unit_vector(n, i), ej = unit_vector(n, j), el = unit_vector(n, l);
        Vector s = a.bracket(ei, a.bracket_basis(j, l)) + a.bracket(ej, a.bracket_basis(l, i)) +
                   a.bracket(el, a.bracket_basis(i, j));
        if (!is_zero(s)) throw Error(ErrorCode::JacobiViolation, {i, j, l});
      }

  // Lower central series, detecting stabilization at a nonzero term.
  const Subspace full = Subspace::full(n);
  Subspace term = full;
  std::size_t cls = 0;
  while (!term.is_zero()) {
    Subspace next = bracket_span(a, full, term);
    if (next == term) throw Error(ErrorCode::NotNilpotent, "lower central series stabilizes in dimension " +
                                                               std::to_string(term.dim()));
    term = std::move(next);
    ++cls;
  }
  a.class_ = cls;

  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i + 1));
  if (labels.size() != n) throw Error(ErrorCode::DimensionMismatch, "label count");
  a.labels_ = std::move(labels);
  return a;
}

inline QuotientPresentation quotient(const NilpotentLieAlgebra& a, const Subspace& k) {
  if (k.ambient_dim() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "subspace dimension");
  if (!is_ideal(a, k)) throw Error(ErrorCode::NotAnIdeal, "quotient requires an ideal");
  const std::size_t n = a.dim();
  const auto cols = k.complement_columns();
  const std::size_t m = cols.size();
  // The zero algebra is not representable as a NilpotentLieAlgebra.
  if (m == 0) throw Error(ErrorCode::DimensionMismatch, "quotient by the whole algebra");

  Matrix section(n, m);
  for (std::size_t c = 0; c < m; ++c) section(cols[c], c) = 1;

  Matrix projection(m, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector r = k.reduce(unit_vector(n, i));
    for (std::size_t c = 0; c < m; ++c) projection(c, i) = r[cols[c]];
  }

  std::vector<std::string> labels;
  for (auto c : cols) labels.push_back(a.label(c));

  StructureTensor qt(m);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) {
      Vector br = projection * a.bracket_basis(cols[p], cols[q]);
      for (std::size_t r = 0; r < m; ++r) qt.at(p, q, r) = br[r];
    }
  QuotientPresentation out{validate_algebra(qt, std::move(labels)), std::move(projection), std::move(section), k};

  // projection must be a morphism: pi[e_i,e_j] = [pi e_i, pi e_j] for all i, j.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector lhs = out.projection * a.bracket_basis(i, j);
      Vector rhs = out.algebra.bracket(out.projection.column(i), out.projection.column(j));
      if (lhs != rhs) throw Error(ErrorCode::NotAnIdeal, {i, j}, "projection is not bracket-compatible");
    }
  return out;
}

}  // namespace heintze
