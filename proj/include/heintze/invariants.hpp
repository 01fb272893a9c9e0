#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "heintze/spectral.hpp"

namespace heintze {

/// Validated (algebra, derivation) pair with all eigenvalues positive, plus
/// the spectral data every invariant needs.
struct HeintzeData {
  std::shared_ptr<const NilpotentLieAlgebra> algebra;
  Derivation derivation;
  EigenDecomposition eigen;
  JordanData jordan;
  Rational trace;

  std::size_t dim() const { return algebra->dim(); }
  const Matrix& matrix() const { return derivation.matrix(); }
  const Rational& smallest_eigenvalue() const { return eigen.eigenvalues.front(); }
  const Rational& largest_eigenvalue() const { return eigen.eigenvalues.back(); }
};

inline HeintzeData make_heintze(const Derivation& d) {
  EigenDecomposition e = eigen_decomposition(d);
  for (const auto& lambda : e.eigenvalues)
    if (lambda <= 0) throw Error(ErrorCode::NonPositiveEigenvalue, "eigenvalue " + to_string(lambda));
  JordanData j = jordan_data(d);
  Rational tr = d.matrix().trace();
  return HeintzeData{d.algebra_ptr(), d, std::move(e), std::move(j), std::move(tr)};
}

inline HeintzeData make_heintze(std::shared_ptr<const NilpotentLieAlgebra> a, Matrix m) {
  return make_heintze(validate_derivation(std::move(a), std::move(m)));
}

inline HeintzeData make_heintze(const NilpotentLieAlgebra& a, Matrix m) {
  return make_heintze(std::make_shared<const NilpotentLieAlgebra>(a), std::move(m));
}

/// Same algebra, derivation multiplied by s > 0.
inline HeintzeData scale(const HeintzeData& h, const Rational& s) {
  if (s <= 0) throw Error(ErrorCode::ParameterOutOfRange, "scale must be positive");
  return make_heintze(h.algebra, s * h.matrix());
}

/// The lambda_1 eigenspace (true eigenvectors) generates the algebra.
inline bool is_carnot_type(const HeintzeData& h) {
  return lie_span(*h.algebra, eigenspace(h.matrix(), h.smallest_eigenvalue())).is_full();
}

inline Subspace u_alpha(const HeintzeData& h) { return lie_span(*h.algebra, h.eigen.spaces.front()); }

/// Eigenvectors at the bottom of the longest lambda_1 chains.
inline Subspace top_block_eigenvectors(const HeintzeData& h) {
  const std::size_t longest = h.jordan.spectrum.front().max_block();
  std::vector<Vector> gens;
  for (std::size_t b = 0; b < h.jordan.blocks.size(); ++b) {
    const auto& blk = h.jordan.blocks[b];
    if (blk.eigen_index == 0 && blk.size == longest) gens.push_back(h.jordan.chain_vector(b, 1));
  }
  return Subspace::span(h.dim(), gens);
}

inline Subspace h_alpha(const HeintzeData& h) { return lie_span(*h.algebra, top_block_eigenvectors(h)); }

struct ScaledPair {
  HeintzeData first;
  HeintzeData second;  // already multiplied by s
  Rational s;
};

/// Rescales the second derivation so both share the smallest eigenvalue.
inline ScaledPair normalize_scale(const HeintzeData& a, const HeintzeData& b) {
  Rational s = a.smallest_eigenvalue() / b.smallest_eigenvalue();
  return {a, s == 1 ? b : scale(b, s), s};
}

/// {tr / lambda}, ascending and deduplicated.
inline std::vector<Rational> jump_set(const HeintzeData& h) {
  std::set<Rational> out;
  for (const auto& lambda : h.eigen.eigenvalues) out.insert(h.trace / lambda);
  return {out.begin(), out.end()};
}

struct SpectrumProfile {
  std::vector<Rational> jump_points;  // ascending, all > 1
  std::vector<std::size_t> dims;      // dims.size() == jump_points.size() + 1

  friend bool operator==(const SpectrumProfile&, const SpectrumProfile&) = default;
};

/// Codimension of the subalgebra generated by the generalized eigenspaces
/// with eigenvalue below tr / p.
inline std::size_t profile_formula(const HeintzeData& h, const Rational& p) {
  const Rational threshold = h.trace / p;
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < h.eigen.eigenvalues.size(); ++i)
    if (h.eigen.eigenvalues[i] < threshold)
      for (auto& v : h.eigen.spaces[i].basis()) gens.push_back(std::move(v));
  return h.dim() - lie_span(*h.algebra, gens).dim();
}

inline SpectrumProfile spectrum_profile(const HeintzeData& h) {
  std::vector<Rational> candidates;
  for (const auto& c : jump_set(h))
    if (c > 1) candidates.push_back(c);

  std::vector<Rational> probes;
  Rational left = 1;
  for (const auto& c : candidates) {
    probes.push_back((left + c) / 2);
    left = c;
  }
  probes.push_back(left + 1);

  SpectrumProfile prof;
  prof.dims.push_back(profile_formula(h, probes[0]));
  for (std::size_t i = 1; i < probes.size(); ++i) {
    std::size_t d = profile_formula(h, probes[i]);
    if (d == prof.dims.back()) continue;
    prof.jump_points.push_back(candidates[i - 1]);
    prof.dims.push_back(d);
  }
  return prof;
}

/// Value of the profile at p, or nothing at a jump point or for p < 1.
inline std::optional<std::size_t> profile_at(const SpectrumProfile& prof, const Rational& p) {
  if (p < 1) return std::nullopt;
  std::size_t interval = 0;
  for (const auto& j : prof.jump_points) {
    if (p == j) return std::nullopt;
    if (p > j) ++interval;
  }
  return prof.dims[interval];
}

/// Heisenberg algebra of dimension 2m+1: one-dimensional center equal to
/// the derived algebra, with a nondegenerate bracket form on the quotient.
inline bool is_heisenberg(const NilpotentLieAlgebra& a) {
  const std::size_t n = a.dim();
  if (n < 3 || n % 2 == 0) return false;
  const Subspace z = center(a);
  if (z.dim() != 1 || !(derived_subalgebra(a) == z)) return false;
  const auto cols = z.complement_columns();
  const std::size_t zc = z.pivots().front();
  // Coefficient along the central generator equals the pivot entry
  // once the central row is normalized to 1 there.
  Matrix form(cols.size(), cols.size());
  for (std::size_t p = 0; p < cols.size(); ++p)
    for (std::size_t q = 0; q < cols.size(); ++q) form(p, q) = a.bracket_basis(cols[p], cols[q])[zc];
  return rank(form) == cols.size();
}

enum class InvariantTag { CarnotType, CharPoly, JordanForm, SpectrumProfile };

inline std::string_view to_string(InvariantTag t) {
  switch (t) {
    case InvariantTag::CarnotType: return "CarnotType";
    case InvariantTag::CharPoly: return "CharPoly";
    case InvariantTag::JordanForm: return "JordanForm";
    case InvariantTag::SpectrumProfile: return "SpectrumProfile";
  }
  return "?";
}

struct Verdict {
  std::optional<InvariantTag> distinguished_by;  // empty means not distinguished
  Rational s = 1;                                // scale applied to the second derivation

  bool carnot_first = false, carnot_second = false;
  Polynomial poly_first, poly_second;
  std::vector<EigenJordan> jordan_first, jordan_second;
  bool jordan_compared = false;
  SpectrumProfile profile_first, profile_second;
  std::vector<std::string> notes;

  bool distinguished() const { return distinguished_by.has_value(); }
  std::string outcome() const {
    return distinguished_by ? "DistinguishedBy(" + std::string(to_string(*distinguished_by)) + ")"
                            : "NotDistinguished";
  }
};

/// Runs the invariants in order (Carnot flag, characteristic polynomial
/// after normalizing lambda_1, spectrum profile) and stops at the first one
/// that differs. For two abelian or two Heisenberg algebras of equal
/// dimension the Jordan form is a known invariant; there it determines both
/// the Carnot flag and the characteristic polynomial, so it is tested first.
inline Verdict compare(const HeintzeData& a, const HeintzeData& b) {
  Verdict v;
  v.carnot_first = is_carnot_type(a);
  v.carnot_second = is_carnot_type(b);

  const ScaledPair sp = normalize_scale(a, b);
  const HeintzeData& bn = sp.second;
  v.s = sp.s;
  v.poly_first = char_poly(a.matrix());
  v.poly_second = char_poly(bn.matrix());
  v.jordan_first = a.jordan.spectrum;
  v.jordan_second = bn.jordan.spectrum;
  v.profile_first = spectrum_profile(a);
  v.profile_second = spectrum_profile(bn);

  if (v.carnot_first && v.carnot_second)
    v.notes.push_back("both groups are of Carnot type; quasi-isometric Carnot groups are isomorphic, so an "
                      "algebra isomorphism test decides this pair");

  const bool abelian = a.algebra->is_abelian() && b.algebra->is_abelian();
  const bool heis = is_heisenberg(*a.algebra) && is_heisenberg(*b.algebra);
  v.jordan_compared = (abelian || heis) && a.dim() == b.dim();
  if (v.jordan_compared && v.jordan_first != v.jordan_second) {
    v.distinguished_by = InvariantTag::JordanForm;
    if (v.carnot_first != v.carnot_second) v.notes.push_back("the Carnot flags also differ");
    if (!(v.poly_first == v.poly_second)) v.notes.push_back("the characteristic polynomials also differ");
    return v;
  }
  if (!v.jordan_compared)
    v.notes.push_back("Jordan form not compared: only used for two abelian or two Heisenberg algebras");

  if (v.carnot_first != v.carnot_second) {
    v.distinguished_by = InvariantTag::CarnotType;
    return v;
  }
  if (!(v.poly_first == v.poly_second)) {
    v.distinguished_by = InvariantTag::CharPoly;
    return v;
  }
  if (!(v.profile_first == v.profile_second)) {
    v.distinguished_by = InvariantTag::SpectrumProfile;
    return v;
  }
  v.notes.push_back("no implemented invariant separates the pair; this is not a quasi-isometry claim");
  return v;
}

}  // namespace heintze
