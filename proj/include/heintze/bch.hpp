#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "heintze/algebra.hpp"

namespace heintze {

inline constexpr std::size_t kMaxBchDepth = 6;

namespace detail {

/// Words over {X=0, Y=1} encoded as (length, bits), first letter in the
/// highest bit. coefficient[len][bits] is the Dynkin weight applied to the
/// right-nested bracket of the word.
struct DynkinTable {
  std::array<std::vector<Rational>, kMaxBchDepth + 1> coefficient;

  DynkinTable() {
    std::array<Rational, kMaxBchDepth + 1> fact;
    fact[0] = 1;
    for (std::size_t i = 1; i <= kMaxBchDepth; ++i) fact[i] = fact[i - 1] * Rational(static_cast<long>(i));

    for (std::size_t len = 1; len <= kMaxBchDepth; ++len) {
      coefficient[len].assign(std::size_t{1} << len, Rational(0));
      for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
        std::vector<int> w(len);
        for (std::size_t p = 0; p < len; ++p) w[p] = static_cast<int>((bits >> (len - 1 - p)) & 1u);
        if (len >= 2 && w[len - 1] == w[len - 2]) continue;  // right-nested bracket vanishes
        coefficient[len][bits] = log_coefficient(w, fact) / Rational(static_cast<long>(len));
      }
    }
  }

  /// Coefficient of the word in log(e^X e^Y) as a noncommutative series:
  /// sum over factorizations into k nonempty pieces X^r Y^s, each weighted
  /// 1/(r! s!), times (-1)^(k-1)/k.
  static Rational log_coefficient(const std::vector<int>& w, const std::array<Rational, kMaxBchDepth + 1>& fact) {
    const std::size_t len = w.size();
    // ways[p][k]: weighted count of splits of w[0..p) into k pieces.
    std::vector<std::vector<Rational>> ways(len + 1, std::vector<Rational>(len + 1, Rational(0)));
    ways[0][0] = 1;
    for (std::size_t start = 0; start < len; ++start)
      for (std::size_t end = start + 1; end <= len; ++end) {
        std::size_t r = 0;
        while (start + r < end && w[start + r] == 0) ++r;
        std::size_t s = 0;
        while (start + r + s < end && w[start + r + s] == 1) ++s;
        if (start + r + s != end) continue;
        const Rational weight = 1 / (fact[r] * fact[s]);
        for (std::size_t k = 0; k < len; ++k)
          if (ways[start][k] != 0) ways[end][k + 1] += ways[start][k] * weight;
      }
    Rational total = 0;
    for (std::size_t k = 1; k <= len; ++k) {
      Rational term = ways[len][k] / Rational(static_cast<long>(k));
      total += (k % 2 == 1) ? term : -term;
    }
    return total;
  }
};

inline const DynkinTable& dynkin_table() {
  static const DynkinTable table;
  return table;
}

}  // namespace detail

/// Coefficient of the right-nested bracket [w_1,[w_2,...,w_m]] in
/// log(e^X e^Y); the word is a string over {'X','Y'}.
inline Rational bch_word_coefficient(const std::string& word) {
  if (word.empty() || word.size() > kMaxBchDepth) throw Error(ErrorCode::ClassTooHigh, "word length");
  std::size_t bits = 0;
  for (char c : word) bits = (bits << 1) | (c == 'Y' ? 1u : 0u);
  return detail::dynkin_table().coefficient[word.size()][bits];
}

/// log(exp X exp Y) in a nilpotent algebra of class <= depth, for any
/// scalar type with a bracket functor. Only brackets of length <= depth are
/// formed; longer ones vanish.
template <class Scalar, class BracketFn>
std::vector<Scalar> bch_series(const std::vector<Scalar>& x, const std::vector<Scalar>& y, std::size_t depth,
                               BracketFn&& br, Scalar (*convert)(const Rational&)) {
  if (depth > kMaxBchDepth)
    throw Error(ErrorCode::ClassTooHigh, "nilpotency class " + std::to_string(depth) + " exceeds " +
                                             std::to_string(kMaxBchDepth));
  const auto& table = detail::dynkin_table();
  std::vector<Scalar> z(x.size(), Scalar(0));
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];

  // Right-nested values of all words of the current length (suffix tree).
  struct Node {
    std::size_t bits;
    std::vector<Scalar> value;
  };
  std::vector<Node> level{{0, x}, {1, y}};
  auto is_zero_vec = [](const std::vector<Scalar>& v) {
    for (const auto& c : v)
      if (c != 0) return false;
    return true;
  };
  for (std::size_t len = 2; len <= depth; ++len) {
    std::vector<Node> next;
    for (const auto& node : level)
      for (std::size_t letter = 0; letter < 2; ++letter) {
        std::vector<Scalar> v = br(letter == 0 ? x : y, node.value);
        if (is_zero_vec(v)) continue;
        const std::size_t bits = (letter << (len - 1)) | node.bits;
        const Rational& c = table.coefficient[len][bits];
        if (c != 0) {
          const Scalar cs = convert(c);
          for (std::size_t i = 0; i < z.size(); ++i) z[i] += cs * v[i];
        }
        next.push_back({bits, std::move(v)});
      }
    level = std::move(next);
    if (level.empty()) break;
  }
  return z;
}

namespace detail {
inline Rational identity_scalar(const Rational& r) { return r; }
inline double double_scalar(const Rational& r) { return r.get_d(); }
}  // namespace detail

/// exp(X) exp(Y) = exp(Z), exact.
inline Vector bch_product(const NilpotentLieAlgebra& a, const Vector& x, const Vector& y) {
  if (x.size() != a.dim() || y.size() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "bch operand");
  return bch_series<Rational>(
      x, y, a.nilpotency_class(), [&](const Vector& u, const Vector& v) { return a.sparse().bracket(u, v); },
      &detail::identity_scalar);
}

/// Floating-point BCH over a sparse structure of the given class.
inline std::vector<double> bch_product(const SparseStructure<double>& s, std::size_t nilpotency_class,
                                       const std::vector<double>& x, const std::vector<double>& y) {
  return bch_series<double>(
      x, y, nilpotency_class,
      [&](const std::vector<double>& u, const std::vector<double>& v) { return s.bracket(u, v); },
      &detail::double_scalar);
}

/// sum_j ad_X^j(Y) / j!, i.e. log(exp X exp Y exp(-X)).
inline Vector conjugate(const NilpotentLieAlgebra& a, const Vector& x, const Vector& y) {
  Vector term = y;
  Vector out = y;
  for (long j = 1; !is_zero(term); ++j) {
    term = Rational(1, j) * a.bracket(x, term);
    out = out + term;
  }
  return out;
}

}  // namespace heintze
