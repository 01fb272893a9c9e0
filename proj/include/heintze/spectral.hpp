#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

#include "heintze/algebra.hpp"
#include "heintze/polynomial.hpp"

namespace heintze {

/// A rational matrix acting on an algebra's basis (column j is alpha(e_j))
/// that has been checked against the Leibniz rule.
class Derivation {
 public:
  const Matrix& matrix() const noexcept { return matrix_; }
  const NilpotentLieAlgebra& algebra() const noexcept { return *algebra_; }
  const std::shared_ptr<const NilpotentLieAlgebra>& algebra_ptr() const noexcept { return algebra_; }
  std::size_t dim() const noexcept { return matrix_.rows(); }

  Vector apply(const Vector& x) const { return matrix_ * x; }

 private:
  friend Derivation validate_derivation(std::shared_ptr<const NilpotentLieAlgebra>, Matrix);
  Derivation(std::shared_ptr<const NilpotentLieAlgebra> a, Matrix m) : algebra_(std::move(a)), matrix_(std::move(m)) {}

  std::shared_ptr<const NilpotentLieAlgebra> algebra_;
  Matrix matrix_;
};

/// First basis pair (i < j) violating alpha[e_i,e_j] = [alpha e_i,e_j] + [e_i,alpha e_j], if any.
inline std::optional<std::pair<std::size_t, std::size_t>> leibniz_defect(const NilpotentLieAlgebra& a,
                                                                         const Matrix& m) {
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector lhs = m * a.bracket_basis(i, j);
      Vector rhs = a.bracket(m.column(i), unit_vector(n, j)) + a.bracket(unit_vector(n, i), m.column(j));
      if (lhs != rhs) return std::make_pair(i, j);
    }
  return std::nullopt;
}

inline Derivation validate_derivation(std::shared_ptr<const NilpotentLieAlgebra> a, Matrix m) {
  if (!a) throw Error(ErrorCode::InvalidInput, "derivation without an algebra");
  if (m.rows() != a->dim() || m.cols() != a->dim())
    throw Error(ErrorCode::DimensionMismatch, "derivation must be n x n");
  if (auto bad = leibniz_defect(*a, m)) throw Error(ErrorCode::LeibnizViolation, {bad->first, bad->second});
  return Derivation(std::move(a), std::move(m));
}

inline Derivation validate_derivation(const NilpotentLieAlgebra& a, Matrix m) {
  return validate_derivation(std::make_shared<const NilpotentLieAlgebra>(a), std::move(m));
}

/// det(x I - m), by the Faddeev-LeVerrier recurrence.
inline Polynomial char_poly(const Matrix& m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  Matrix acc(n, n);  // M_0 = 0
  const Matrix id = Matrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    acc = m * acc + c[n - k + 1] * id;
    Matrix am = m * acc;
    c[n - k] = -am.trace() / Rational(static_cast<long>(k));
  }
  return Polynomial(std::move(c));
}

struct EigenvalueMultiplicity {
  Rational value;
  std::size_t multiplicity;
  friend bool operator==(const EigenvalueMultiplicity&, const EigenvalueMultiplicity&) = default;
};

namespace detail {

/// Sign changes of a Sturm sequence at t (zeros skipped).
inline std::size_t sturm_variations(const std::vector<Polynomial>& seq, const Rational& t) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    const int s = sgn(p(t));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Integer roots in [lo, hi] of a squarefree monic integer polynomial, by
/// bisection on Sturm counts over the intervals (lo - 1/2, hi + 1/2]. Such a
/// polynomial has no half-integer roots, so the endpoints are never roots.
inline void integer_roots(const std::vector<Polynomial>& seq, const Integer& lo, const Integer& hi,
                          std::vector<Integer>& out) {
  const Rational half = make_rational(1, 2);
  const std::size_t count = sturm_variations(seq, Rational(lo) - half) - sturm_variations(seq, Rational(hi) + half);
  if (count == 0) return;
  if (lo == hi) {
    if (seq.front()(Rational(lo)) == 0) out.push_back(lo);
    return;
  }
  Integer mid = lo + hi;
  mpz_fdiv_q_2exp(mid.get_mpz_t(), mid.get_mpz_t(), 1);
  integer_roots(seq, lo, mid, out);
  integer_roots(seq, mid + 1, hi, out);
}

/// Positive multiple of p with coprime integer coefficients. Sturm counts
/// only see signs, so this keeps the sequence small without changing them.
inline Polynomial primitive_part(const Polynomial& p) {
  Integer den = 1, num = 0;
  for (const auto& c : p.coefficients()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
  }
  if (num == 0) return p;
  return Polynomial::constant(make_rational(den, num)) * p;
}

/// Fujiwara bound: every root of the monic polynomial g has absolute value
/// at most 2 max_k |g_{n-k}|^{1/k}.
inline Integer root_bound(const std::vector<Rational>& g) {
  const std::size_t n = g.size() - 1;
  Integer best = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Integer c = abs(g[n - k].get_num());
    if (k == n) c = c / 2 + 1;
    Integer r;
    mpz_root(r.get_mpz_t(), c.get_mpz_t(), k);
    r += 1;
    if (r > best) best = r;
  }
  return 2 * best;
}

}  // namespace detail

/// Complete factorization of a polynomial into rational linear factors,
/// roots ascending. The distinct roots are those of the squarefree part;
/// scaled to a monic integer polynomial its rational roots are integers,
/// which are isolated with a Sturm sequence. Anything left over means the
/// spectrum does not split over Q.
inline std::vector<EigenvalueMultiplicity> rational_roots(const Polynomial& p) {
  if (p.degree() < 0) throw Error(ErrorCode::InvalidInput, "roots of the zero polynomial");
  Polynomial f = p.monic();
  std::vector<EigenvalueMultiplicity> out;

  if (f.degree() > 0) {
    const Polynomial sq = f.divmod(gcd(f, f.derivative())).first.monic();
    // g(y) = D^n sq(y / D) is monic with integer coefficients.
    const std::size_t n = static_cast<std::size_t>(sq.degree());
    Integer d = 1;
    for (const auto& c : sq.coefficients()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Rational> g(n + 1);
    Integer dp = 1;
    for (std::size_t k = n + 1; k-- > 0;) {
      g[k] = sq.coefficient(k) * Rational(dp);
      dp *= d;
    }
    const Polynomial gp(g);
    const Integer bound = detail::root_bound(g);

    std::vector<Polynomial> seq{gp, detail::primitive_part(gp.derivative())};
    while (seq.back().degree() > 0) {
      Polynomial r = seq[seq.size() - 2].divmod(seq.back()).second;
      if (r.is_zero()) break;
      seq.push_back(Polynomial::constant(-1) * detail::primitive_part(r));
    }
    std::vector<Integer> ys;
    detail::integer_roots(seq, -bound, bound, ys);
    for (const auto& y : ys) {
      const Rational r = make_rational(y, d);
      std::size_t mult = 0;
      while (f.degree() > 0 && f(r) == 0) {
        f = f.deflate(r);
        ++mult;
      }
      out.push_back({r, mult});
    }
  }
  if (f.degree() > 0)
    throw Error(ErrorCode::IrrationalOrComplexSpectrum,
                "characteristic polynomial has an irreducible factor of degree " + std::to_string(f.degree()));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return out;
}

inline std::vector<EigenvalueMultiplicity> rational_eigenvalues(const Matrix& m) { return rational_roots(char_poly(m)); }

/// Eigenvalues repeated by algebraic multiplicity, ascending.
inline std::vector<Rational> expand(const std::vector<EigenvalueMultiplicity>& spectrum) {
  std::vector<Rational> out;
  for (const auto& e : spectrum)
    for (std::size_t i = 0; i < e.multiplicity; ++i) out.push_back(e.value);
  return out;
}

inline Matrix shifted(const Matrix& m, const Rational& lambda) { return m - lambda * Matrix::identity(m.rows()); }

struct EigenDecomposition {
  std::vector<Rational> eigenvalues;       // distinct, ascending
  std::vector<Subspace> spaces;            // generalized eigenspaces
  std::vector<std::size_t> multiplicities;
};

inline EigenDecomposition eigen_decomposition(const Matrix& m) {
  EigenDecomposition e;
  std::size_t total = 0;
  for (const auto& [lambda, mult] : rational_eigenvalues(m)) {
    Subspace v = Subspace::span(m.rows(), kernel(power(shifted(m, lambda), mult)));
    if (v.dim() != mult) throw std::logic_error("generalized eigenspace dimension differs from multiplicity");
    total += v.dim();
    e.eigenvalues.push_back(lambda);
    e.spaces.push_back(std::move(v));
    e.multiplicities.push_back(mult);
  }
  if (total != m.rows()) throw std::logic_error("generalized eigenspaces do not fill the space");
  return e;
}

inline EigenDecomposition eigen_decomposition(const Derivation& d) { return eigen_decomposition(d.matrix()); }

/// Eigenspace ker(m - lambda) (true eigenvectors only).
inline Subspace eigenspace(const Matrix& m, const Rational& lambda) {
  return Subspace::span(m.rows(), kernel(shifted(m, lambda)));
}

/// One Jordan block; the chain X^1..X^size occupies consecutive basis
/// columns starting at first_column, with m X^k = lambda X^k + X^{k-1}.
struct JordanBlock {
  std::size_t eigen_index;
  std::size_t size;
  std::size_t first_column;
};

struct EigenJordan {
  Rational eigenvalue;
  std::vector<std::size_t> block_sizes;  // descending
  std::size_t max_block() const { return block_sizes.empty() ? 0 : block_sizes.front(); }
  friend bool operator==(const EigenJordan&, const EigenJordan&) = default;
};

struct JordanData {
  std::vector<EigenJordan> spectrum;  // eigenvalues ascending
  std::vector<JordanBlock> blocks;
  Matrix basis;                       // columns are the chain vectors

  Vector chain_vector(std::size_t block, std::size_t level) const {
    const auto& b = blocks.at(block);
    if (level < 1 || level > b.size) throw std::out_of_range("chain level");
    return basis.column(b.first_column + level - 1);
  }

  /// Block structure only (the basis is not canonical).
  bool same_form(const JordanData& o) const { return spectrum == o.spectrum; }
};

/// The Jordan matrix matching data.basis (lambda on the diagonal, 1 above
/// it inside each chain).
inline Matrix jordan_matrix(const JordanData& data) {
  const std::size_t n = data.basis.rows();
  Matrix j(n, n);
  for (const auto& b : data.blocks) {
    const Rational& lambda = data.spectrum[b.eigen_index].eigenvalue;
    for (std::size_t k = 0; k < b.size; ++k) {
      j(b.first_column + k, b.first_column + k) = lambda;
      if (k > 0) j(b.first_column + k - 1, b.first_column + k) = 1;
    }
  }
  return j;
}

/// Block sizes for one eigenvalue read off the rank sequence of (m - lambda)^k:
/// the number of blocks of size >= k is rank_{k-1} - rank_k.
inline std::vector<std::size_t> block_sizes_from_ranks(const Matrix& m, const Rational& lambda) {
  const Matrix nil = shifted(m, lambda);
  std::vector<std::size_t> ranks{m.rows()};
  Matrix p = Matrix::identity(m.rows());
  while (true) {
    p = p * nil;
    ranks.push_back(rank(p));
    if (ranks.back() == ranks[ranks.size() - 2]) break;
  }
  std::vector<std::size_t> at_least(ranks.size() - 1);
  for (std::size_t k = 1; k < ranks.size(); ++k) at_least[k - 1] = ranks[k - 1] - ranks[k];
  std::vector<std::size_t> sizes;
  for (std::size_t k = 0; k < at_least.size(); ++k) {
    std::size_t next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
    for (std::size_t c = 0; c < at_least[k] - next; ++c) sizes.push_back(k + 1);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

/// Jordan chains built from the top: for each size s (largest first) new
/// chain tops are picked in ker N^s outside ker N^{s-1} + (lower parts of
/// longer chains), then pushed down by N = m - lambda.
inline JordanData jordan_data(const Matrix& m) {
  const std::size_t n = m.rows();
  JordanData data;
  data.basis = Matrix(n, n);
  std::size_t column = 0;
  const auto spectrum = rational_eigenvalues(m);
  for (std::size_t ei = 0; ei < spectrum.size(); ++ei) {
    const auto& [lambda, mult] = spectrum[ei];
    const Matrix nil = shifted(m, lambda);
    std::vector<Subspace> kernels{Subspace::zero(n)};
    Matrix p = Matrix::identity(n);
    while (kernels.back().dim() < mult) {
      p = p * nil;
      kernels.push_back(Subspace::span(n, kernel(p)));
    }
    const std::size_t top = kernels.size() - 1;

    struct Chain {
      std::size_t size;
      std::vector<Vector> vectors;  // vectors[k-1] = X^k
    };
    std::vector<Chain> chains;
    for (std::size_t s = top; s >= 1; --s) {
      std::vector<Vector> span_gens = kernels[s - 1].basis();
      for (const auto& c : chains) span_gens.push_back(c.vectors[s - 1]);
      Subspace covered = Subspace::span(n, span_gens);
      for (const auto& cand : kernels[s].basis()) {
        if (covered.contains(cand)) continue;
        Chain c{s, std::vector<Vector>(s)};
        c.vectors[s - 1] = cand;
        for (std::size_t k = s - 1; k >= 1; --k) c.vectors[k - 1] = nil * c.vectors[k];
        span_gens.push_back(cand);
        covered = Subspace::span(n, span_gens);
        chains.push_back(std::move(c));
      }
    }

    EigenJordan ej{lambda, {}};
    for (const auto& c : chains) ej.block_sizes.push_back(c.size);
    if (ej.block_sizes != block_sizes_from_ranks(m, lambda))
      throw std::logic_error("Jordan chains disagree with the rank sequence");
    for (const auto& c : chains) {
      data.blocks.push_back({ei, c.size, column});
      for (const auto& v : c.vectors) data.basis.set_column(column++, v);
    }
    data.spectrum.push_back(std::move(ej));
  }
  if (column != n) throw std::logic_error("Jordan basis is incomplete");
  if (!(m * data.basis == data.basis * jordan_matrix(data)))
    throw std::logic_error("Jordan basis fails the conjugation check");
  return data;
}

inline JordanData jordan_data(const Derivation& d) { return jordan_data(d.matrix()); }

/// alpha = delta + nu with delta diagonalizable, nu nilpotent, commuting.
struct SemisimpleNilpotentSplit {
  Derivation delta;
  Derivation nu;
};

inline Matrix semisimple_part(const Matrix& m) {
  const auto e = eigen_decomposition(m);
  std::vector<Vector> cols;
  Vector diag;
  for (std::size_t i = 0; i < e.spaces.size(); ++i)
    for (auto& v : e.spaces[i].basis()) {
      cols.push_back(std::move(v));
      diag.push_back(e.eigenvalues[i]);
    }
  Matrix p = Matrix::from_columns(cols, m.rows());
  return p * Matrix::diagonal(diag) * inverse(p);
}

inline SemisimpleNilpotentSplit semisimple_nilpotent_split(const Derivation& d) {
  Matrix delta = semisimple_part(d.matrix());
  Matrix nu = d.matrix() - delta;
  return {validate_derivation(d.algebra_ptr(), delta), validate_derivation(d.algebra_ptr(), nu)};
}

struct GradingViolation {
  std::size_t space_i, space_j;
  Vector bracket;
};

struct GradingReport {
  bool passed = true;
  std::size_t pairs_checked = 0;
  std::vector<GradingViolation> violations;
};

/// [V_i, V_j] must lie in V_k when lambda_k = lambda_i + lambda_j and vanish
/// when no such eigenvalue exists.
inline GradingReport grading_check(const NilpotentLieAlgebra& a, const EigenDecomposition& e) {
  GradingReport report;
  for (std::size_t i = 0; i < e.spaces.size(); ++i)
    for (std::size_t j = i; j < e.spaces.size(); ++j) {
      const Rational target = e.eigenvalues[i] + e.eigenvalues[j];
      auto it = std::find(e.eigenvalues.begin(), e.eigenvalues.end(), target);
      const Subspace allowed = it == e.eigenvalues.end()
                                   ? Subspace::zero(a.dim())
                                   : e.spaces[static_cast<std::size_t>(it - e.eigenvalues.begin())];
      for (const auto& u : e.spaces[i].basis())
        for (const auto& v : e.spaces[j].basis()) {
          ++report.pairs_checked;
          Vector b = a.bracket(u, v);
          if (!allowed.contains(b)) {
            report.passed = false;
            report.violations.push_back({i, j, std::move(b)});
          }
        }
    }
  return report;
}

inline GradingReport grading_check(const Derivation& d, const EigenDecomposition& e) {
  return grading_check(d.algebra(), e);
}

/// 2-step with derived algebra of dimension at most one (k_n + R^p).
inline bool in_class_c(const NilpotentLieAlgebra& a) {
  return a.nilpotency_class() <= 2 && derived_subalgebra(a).dim() <= 1;
}

struct AuditViolation {
  int rule;                // 1: nonzero [X_ir^1, X_js^l] needs l = m_js; 2: then m_ir >= m_js forces equality
  std::size_t block_a;     // block of the eigenvector X_ir^1
  std::size_t block_b;     // block of X_js^l
  std::size_t level;       // l
};

struct AuditReport {
  bool passed = true;
  std::size_t brackets_checked = 0;
  std::vector<AuditViolation> violations;
};

/// Bracket pattern of a Jordan basis in class C: an eigenvector can only
/// bracket nontrivially with the top of a chain, and only with a chain no
/// shorter than its own unless the lengths agree.
inline AuditReport jordan_basis_bracket_audit(const NilpotentLieAlgebra& a, const JordanData& j) {
  if (!in_class_c(a)) throw Error(ErrorCode::NotClassC, "audit needs a 2-step algebra with derived dimension <= 1");
  AuditReport report;
  for (std::size_t r = 0; r < j.blocks.size(); ++r) {
    const Vector eig = j.chain_vector(r, 1);
    const std::size_t m_r = j.blocks[r].size;
    for (std::size_t s = 0; s < j.blocks.size(); ++s) {
      const std::size_t m_s = j.blocks[s].size;
      for (std::size_t l = 1; l <= m_s; ++l) {
        ++report.brackets_checked;
        if (is_zero(a.bracket(eig, j.chain_vector(s, l)))) continue;
        if (l != m_s) {
          report.passed = false;
          report.violations.push_back({1, r, s, l});
        } else if (m_r >= m_s && m_r != m_s) {
          report.passed = false;
          report.violations.push_back({2, r, s, l});
        }
      }
    }
  }
  return report;
}

inline AuditReport jordan_basis_bracket_audit(const Derivation& d, const JordanData& j) {
  return jordan_basis_bracket_audit(d.algebra(), j);
}

}  // namespace heintze
