#pragma once

#include <cstddef>
#include <vector>

#include "heintze/matrix.hpp"

namespace heintze {

/// A rational subspace of Q^n held in reduced row echelon form. The form is
/// canonical, so equality of subspaces is equality of the basis matrices.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t n) { return Subspace(n, Matrix(0, n), {}); }

  static Subspace full(std::size_t n) {
    std::vector<std::size_t> pivots(n);
    for (std::size_t i = 0; i < n; ++i) pivots[i] = i;
    return Subspace(n, Matrix::identity(n), std::move(pivots));
  }

  static Subspace span(std::size_t n, const std::vector<Vector>& generators) {
    if (generators.empty()) return zero(n);
    auto ef = rref(Matrix::from_rows(generators, n));
    return Subspace(n, std::move(ef.reduced), std::move(ef.pivots));
  }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return pivots_.size(); }
  bool is_zero() const noexcept { return pivots_.empty(); }
  bool is_full() const noexcept { return dim() == ambient_; }

  /// Rows are the canonical basis vectors.
  const Matrix& basis_matrix() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  std::vector<Vector> basis() const {
    std::vector<Vector> out;
    out.reserve(dim());
    for (std::size_t r = 0; r < dim(); ++r) out.push_back(basis_.row(r));
    return out;
  }

  /// v minus its component along the basis; zero at every pivot column.
  Vector reduce(Vector v) const {
    check_ambient(v);
    for (std::size_t r = 0; r < dim(); ++r) {
      Rational f = v[pivots_[r]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < ambient_; ++j) v[j] -= f * basis_(r, j);
    }
    return v;
  }

  bool contains(const Vector& v) const { return is_zero_vector(reduce(v)); }

  bool contains(const Subspace& other) const {
    for (std::size_t r = 0; r < other.dim(); ++r)
      if (!contains(other.basis_.row(r))) return false;
    return true;
  }

  /// Coordinates of a member vector in the canonical basis (read off pivots).
  Vector coordinates(const Vector& v) const {
    if (!contains(v)) throw Error(ErrorCode::DimensionMismatch, "vector not in subspace");
    Vector c(dim());
    for (std::size_t r = 0; r < dim(); ++r) c[r] = v[pivots_[r]];
    return c;
  }

  /// Non-pivot columns: the standard basis vectors indexed by these span a
  /// complement of this subspace.
  std::vector<std::size_t> complement_columns() const {
    std::vector<bool> pivot(ambient_, false);
    for (auto p : pivots_) pivot[p] = true;
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!pivot[j]) out.push_back(j);
    return out;
  }

  /// Linear functionals vanishing on the subspace.
  std::vector<Vector> annihilator() const {
    if (is_zero()) {
      std::vector<Vector> all;
      for (std::size_t i = 0; i < ambient_; ++i) all.push_back(unit_vector(ambient_, i));
      return all;
    }
    return kernel(basis_);
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    a.check_same_ambient(b);
    auto gens = a.basis();
    for (auto& v : b.basis()) gens.push_back(std::move(v));
    return span(a.ambient_, gens);
  }

  friend Subspace intersect(const Subspace& a, const Subspace& b) {
    a.check_same_ambient(b);
    auto eqs = a.annihilator();
    for (auto& f : b.annihilator()) eqs.push_back(std::move(f));
    if (eqs.empty()) return full(a.ambient_);
    return span(a.ambient_, kernel(Matrix::from_rows(eqs, a.ambient_)));
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
  }

 private:
  Subspace(std::size_t n, Matrix basis, std::vector<std::size_t> pivots)
      : ambient_(n), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  static bool is_zero_vector(const Vector& v) { return heintze::is_zero(v); }

  void check_ambient(const Vector& v) const {
    if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector/ambient dimension");
  }
  void check_same_ambient(const Subspace& o) const {
    if (o.ambient_ != ambient_) throw Error(ErrorCode::DimensionMismatch, "ambient dimensions differ");
  }

  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Image of a subspace under a linear map given as a matrix acting on columns.
inline Subspace image(const Matrix& m, const Subspace& s) {
  std::vector<Vector> gens;
  for (const auto& v : s.basis()) gens.push_back(m * v);
  return Subspace::span(m.rows(), gens);
}

inline bool is_invariant(const Matrix& m, const Subspace& s) { return s.contains(image(m, s)); }

/// Matrix of m restricted to an m-invariant subspace, in the canonical basis.
inline Matrix restrict_to(const Matrix& m, const Subspace& s) {
  const auto basis = s.basis();
  Matrix r(s.dim(), s.dim());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    Vector image_j = m * basis[j];
    if (!s.contains(image_j)) throw Error(ErrorCode::DimensionMismatch, "subspace is not invariant");
    r.set_column(j, s.coordinates(image_j));
  }
  return r;
}

}  // namespace heintze
