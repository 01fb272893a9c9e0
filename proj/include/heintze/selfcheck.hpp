#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <random>
#include <string>
#include <vector>

#include "heintze/corpus.hpp"
#include "heintze/numerics.hpp"

namespace heintze::selfcheck {

struct PropertyResult {
  std::string subject;
  std::string property;
  bool passed = true;
  bool skipped = false;
  std::string detail;  // counterexample or note
};

/// alpha-invariant ideals met along normalizer chains started at h_alpha,
/// u_alpha and the subalgebra generated by each generalized eigenspace.
inline std::vector<Subspace> invariant_chain_ideals(const HeintzeData& h) {
  const NilpotentLieAlgebra& a = *h.algebra;
  std::vector<Subspace> starts{h_alpha(h), u_alpha(h)};
  for (const auto& v : h.eigen.spaces) starts.push_back(lie_span(a, v));
  std::vector<Subspace> out;
  for (const auto& s : starts) {
    if (s.is_full()) continue;
    for (const auto& member : normalizer_chain(a, s)) {
      if (member.is_full() || !is_ideal(a, member) || !is_invariant(h.matrix(), member)) continue;
      bool seen = false;
      for (const auto& o : out) seen = seen || o == member;
      if (!seen) out.push_back(member);
    }
  }
  return out;
}

struct Factorization {
  Subspace ideal;
  Polynomial restricted, induced;
  bool holds = false;
};

/// char_poly(alpha) = char_poly(alpha on k) * char_poly(alpha on a/k).
inline Factorization charpoly_factorization(const HeintzeData& h, const Subspace& k) {
  const auto q = quotient(*h.algebra, k);
  Factorization f{k, char_poly(restrict_to(h.matrix(), k)), char_poly(induced_on_quotient(h.matrix(), q)), false};
  f.holds = f.restricted * f.induced == char_poly(h.matrix());
  return f;
}

inline Vector random_rational_vector(std::mt19937_64& rng, std::size_t n) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) {
    long num = static_cast<long>(rng() % 11) - 5;
    long den = 1 + static_cast<long>(rng() % 4);
    v.push_back(make_rational(num, den));
  }
  return v;
}

inline std::string render(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

inline std::string sci(double x) {
  std::ostringstream o;
  o << std::scientific << std::setprecision(2) << x;
  return o.str();
}

inline std::vector<PropertyResult> check_algebra(const std::string& name, const NilpotentLieAlgebra& a) {
  std::vector<PropertyResult> out;
  auto add = [&](std::string prop, bool ok, std::string detail = {}) {
    out.push_back({name, std::move(prop), ok, false, std::move(detail)});
  };
  try {
    validate_algebra(a.tensor(), a.labels());
    add("jacobi", true);
  } catch (const Error& e) {
    add("jacobi", false, e.what());
  }
  add("center-is-ideal", is_ideal(a, center(a)));
  add("derived-is-ideal", is_ideal(a, derived_subalgebra(a)));
  bool chains_ok = true;
  std::string chain_detail;
  for (std::size_t i = 0; i < a.dim() && chains_ok; ++i) {
    Subspace s = lie_span(a, {unit_vector(a.dim(), i)});
    if (s.is_full()) continue;
    try {
      auto chain = normalizer_chain(a, s);
      for (std::size_t c = 1; c < chain.size(); ++c)
        if (!(chain[c].contains(chain[c - 1]) && chain[c].dim() > chain[c - 1].dim())) chains_ok = false;
    } catch (const Error& e) {
      chains_ok = false;
      chain_detail = e.what();
    }
  }
  add("normalizer-chains-grow", chains_ok, chain_detail);
  return out;
}

inline std::vector<PropertyResult> check_heintze(const std::string& name, const HeintzeData& h, std::uint64_t seed) {
  std::vector<PropertyResult> out = check_algebra(name, *h.algebra);
  auto add = [&](std::string prop, bool ok, std::string detail = {}) {
    out.push_back({name, std::move(prop), ok, false, std::move(detail)});
  };
  const NilpotentLieAlgebra& a = *h.algebra;
  const std::size_t n = a.dim();

  if (auto bad = leibniz_defect(a, h.matrix()))
    add("leibniz", false, "pair (" + std::to_string(bad->first + 1) + "," + std::to_string(bad->second + 1) + ")");
  else
    add("leibniz", true);

  {
    auto g = grading_check(a, h.eigen);
    std::string detail;
    if (!g.passed) {
      const auto& v = g.violations.front();
      detail = "[V" + std::to_string(v.space_i + 1) + ",V" + std::to_string(v.space_j + 1) + "] contains " +
               render(v.bracket);
    }
    add("grading", g.passed, detail);
  }

  try {
    auto split = semisimple_nilpotent_split(h.derivation);
    const Matrix& d = split.delta.matrix();
    const Matrix& nu = split.nu.matrix();
    bool ok = d + nu == h.matrix() && d * nu == nu * d && power(nu, n).is_zero();
    add("semisimple-nilpotent-split", ok, ok ? "" : "split identities fail");
  } catch (const Error& e) {
    add("semisimple-nilpotent-split", false, e.what());
  }

  {
    bool ok = true;
    std::string detail;
    for (const auto& k : invariant_chain_ideals(h)) {
      auto f = charpoly_factorization(h, k);
      if (!f.holds) {
        ok = false;
        detail = "ideal of dim " + std::to_string(k.dim()) + ": " + f.restricted.to_string() + " * " +
                 f.induced.to_string();
        break;
      }
    }
    add("charpoly-multiplicativity", ok, detail);
  }

  {
    bool ok = true;
    for (const auto& e : h.jordan.spectrum)
      ok = ok && e.block_sizes == block_sizes_from_ranks(h.matrix(), e.eigenvalue);
    add("jordan-rank-sequence", ok);
  }

  {
    auto prof = spectrum_profile(h);
    auto jumps = jump_set(h);
    bool ok = prof.dims.back() == n;
    for (std::size_t i = 1; i < prof.dims.size(); ++i) ok = ok && prof.dims[i - 1] <= prof.dims[i];
    for (const auto& j : prof.jump_points) ok = ok && std::find(jumps.begin(), jumps.end(), j) != jumps.end();
    add("profile-shape", ok);
  }

  std::mt19937_64 rng(seed);
  if (a.nilpotency_class() <= kMaxBchDepth) {
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      Vector x = random_rational_vector(rng, n), y = random_rational_vector(rng, n), z = random_rational_vector(rng, n);
      if (bch_product(a, bch_product(a, x, y), z) != bch_product(a, x, bch_product(a, y, z))) {
        ok = false;
        detail = "x=" + render(x) + " y=" + render(y) + " z=" + render(z);
      }
    }
    add("bch-associativity", ok, detail);

    // The numeric model is evaluated in a Jordan basis: the gauge is a
    // property of the group, and mixed coordinates only add cancellation.
    const HeintzeData adapted = corpus::change_basis(h, h.jordan.basis);
    const auto model = make_model(adapted);
    Rng nrng(seed ^ 0x9e3779b97f4a7c15ull);
    double worst_h = 0, worst_l = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const RealVector x = random_point(nrng, n, -1, 1), y = random_point(nrng, n, -1, 1);
      const RealVector g = random_point(nrng, n, -1, 1);
      const double t = nrng.uniform(-5, 5);
      const double base = flow_quasimetric(model, x, y);
      if (base == 0) continue;
      const double scaled = flow_quasimetric(model, tau_action(model, t, x), tau_action(model, t, y));
      worst_h = std::max(worst_h, std::abs(std::exp(-t) * scaled / base - 1));
      const double moved = flow_quasimetric(model, group_product(model, g, x), group_product(model, g, y));
      worst_l = std::max(worst_l, std::abs(moved / base - 1));
    }
    add("homogeneity", worst_h < 1e-9, "max relative error " + sci(worst_h));
    add("left-invariance", worst_l < 1e-9, "max relative error " + sci(worst_l));
  } else {
    out.push_back({name, "bch-associativity", true, true, "class above BCH table"});
  }

  if (in_class_c(a)) {
    auto audit = jordan_basis_bracket_audit(a, h.jordan);
    std::string detail;
    if (!audit.passed) {
      const auto& v = audit.violations.front();
      detail = "rule " + std::to_string(v.rule) + " blocks " + std::to_string(v.block_a + 1) + "," +
               std::to_string(v.block_b + 1) + " level " + std::to_string(v.level);
    }
    add("jordan-bracket-audit", audit.passed, detail);
  } else {
    out.push_back({name, "jordan-bracket-audit", true, true, "algebra not of the form k_n + R^p"});
  }
  return out;
}

/// Built-in corpus, seeded random graph instances and random rebasings.
inline std::vector<corpus::Entry> default_corpus(std::uint64_t seed) {
  auto entries = corpus::builtin();
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 10; ++i)
    entries.push_back({"random-graph-" + std::to_string(i + 1), corpus::random_graph_instance(rng)});
  const std::vector<std::string> rebased{"heisenberg-block", "k2-block", "gamma1", "filiform-5"};
  for (const auto& name : rebased)
    for (const auto& e : corpus::builtin())
      if (e.name == name)
        entries.push_back(
            {name + "-rebased", corpus::change_basis(e.data, corpus::random_invertible(e.data.dim(), rng))});
  return entries;
}

}  // namespace heintze::selfcheck
