#include <random>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "support.hpp"

using namespace heintze;
using support::error_code;
using support::span;

namespace {

NilpotentLieAlgebra gamma1_algebra() { return build_algebra(corpus::triangle_graph()); }
NilpotentLieAlgebra gamma2_algebra() { return build_algebra(corpus::two_edges_graph()); }

// Index layout of the triangle algebra: X1 X2 X3 Z1 Z2 Z3.
enum { X1, X2, X3, Z1, Z2, Z3 };

}  // namespace

TEST_CASE("validation accepts the Heisenberg algebra", "[algebra]") {
  auto k1 = corpus::heisenberg(1);
  CHECK(k1.dim() == 3);
  CHECK(k1.nilpotency_class() == 2);
  CHECK(k1.bracket(unit_vector(3, 0), unit_vector(3, 1)) == unit_vector(3, 2));
  CHECK(k1.labels() == std::vector<std::string>{"X", "Y", "Z"});
}

TEST_CASE("validation rejects malformed tensors", "[algebra]") {
  SECTION("[X,Y] = X is not nilpotent") {
    StructureTensor t(2);
    t.at(0, 1, 0) = 1;
    t.at(1, 0, 0) = -1;
    CHECK(error_code([&] { validate_algebra(t); }) == ErrorCode::NotNilpotent);
  }
  SECTION("asymmetric constants") {
    StructureTensor t(3);
    t.at(0, 1, 2) = 1;
    CHECK(error_code([&] { validate_algebra(t); }) == ErrorCode::AntisymmetryViolation);
  }
  SECTION("Jacobi failure names the triple") {
    StructureTensor t(5);
    auto set = [&](std::size_t i, std::size_t j, std::size_t k) {
      t.at(i, j, k) = 1;
      t.at(j, i, k) = -1;
    };
    set(0, 1, 2);
    set(2, 3, 4);
    try {
      validate_algebra(t);
      FAIL("expected a Jacobi violation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::JacobiViolation);
      CHECK(e.where() == std::vector<std::size_t>{0, 1, 3});
    }
  }
}

TEST_CASE("graph algebra brackets", "[algebra]") {
  auto n = gamma1_algebra();
  CHECK(n.bracket_basis(X1, X2) == unit_vector(6, Z1));
  CHECK(n.bracket_basis(X2, X1) == -unit_vector(6, Z1));
  CHECK(n.bracket_basis(X2, X3) == unit_vector(6, Z2));
  CHECK(n.bracket_basis(X1, X3) == unit_vector(6, Z3));
  CHECK(is_zero(n.bracket_basis(X1, Z1)));
}

TEST_CASE("lie_span closes under brackets", "[algebra]") {
  auto k1 = corpus::heisenberg(1);
  CHECK(lie_span(k1, {unit_vector(3, 0), unit_vector(3, 1)}).is_full());
  auto n = gamma1_algebra();
  Subspace s = lie_span(n, {unit_vector(6, X1), unit_vector(6, X2)});
  CHECK(s == span(6, {X1, X2, Z1}));
  CHECK(s.dim() == oracle::closure_dim(n, {unit_vector(6, X1), unit_vector(6, X2)}));
}

TEST_CASE("center and derived subalgebra", "[algebra]") {
  auto k1 = corpus::heisenberg(1);
  CHECK(center(k1) == span(3, {2}));
  CHECK(derived_subalgebra(gamma2_algebra()) == span(6, {4, 5}));
  CHECK(derived_subalgebra(gamma1_algebra()).dim() == 3);
  CHECK(lower_central_series(k1).size() >= 2);
}

TEST_CASE("normalizers and chains", "[algebra]") {
  auto k1 = corpus::heisenberg(1);
  CHECK(normalizer(k1, span(3, {0})) == span(3, {0, 2}));
  auto chain = normalizer_chain(k1, span(3, {0}));
  REQUIRE(chain.size() == 3);
  CHECK(chain[1] == span(3, {0, 2}));
  CHECK(chain[2].is_full());

  // A proper ideal normalizes to everything in one step.
  CHECK(normalizer_chain(k1, center(k1)).size() == 2);

  // With a three-eigenvalue derivation diag(1,2,3), N(V1) = V1 + V3.
  auto h = make_heintze(k1, Matrix::diagonal(corpus::ints({1, 2, 3})));
  CHECK(normalizer(k1, h.eigen.spaces[0]) == h.eigen.spaces[0] + h.eigen.spaces[2]);

  CHECK(error_code([&] { normalizer(k1, span(3, {0, 1})); }) == ErrorCode::NotASubalgebra);
}

TEST_CASE("normalizer chain from h_alpha of the triangle group ends at the algebra", "[algebra]") {
  auto h = corpus::gamma1();
  auto chain = normalizer_chain(*h.algebra, h_alpha(h));
  REQUIRE_FALSE(chain.empty());
  CHECK(chain.back().is_full());
  // Oracle: repeated normalizer until a fixpoint.
  Subspace s = h_alpha(h);
  std::size_t steps = 0;
  while (!s.is_full()) {
    Subspace next = normalizer(*h.algebra, s);
    REQUIRE(next.dim() > s.dim());
    s = next;
    ++steps;
  }
  CHECK(chain.size() == steps + 1);
}

TEST_CASE("quotients", "[algebra]") {
  auto k1 = corpus::heisenberg(1);
  auto q = quotient(k1, center(k1));
  CHECK(q.algebra.dim() == 2);
  CHECK(q.algebra.is_abelian());
  CHECK(q.projection * q.section == Matrix::identity(2));

  CHECK(quotient(k1, Subspace::zero(3)).algebra.tensor().dim == 3);

  auto n = gamma1_algebra();
  Subspace k = span(6, {X1, X2, Z1, Z2, Z3});
  CHECK(is_ideal(n, k));
  CHECK(quotient(n, k).algebra.dim() == 1);
  CHECK(error_code([&] { quotient(n, span(6, {X1})); }) == ErrorCode::NotAnIdeal);
}

TEST_CASE("random graph algebras satisfy the structural properties", "[algebra][property]") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    DirectedGraph g;
    corpus::random_graph_instance(rng, 5, 3, &g);
    auto a = build_algebra(g);
    const std::size_t n = a.dim();
    if (n > 8) continue;

    // Jacobi on random vectors.
    for (int s = 0; s < 5; ++s) {
      Vector x = selfcheck::random_rational_vector(rng, n), y = selfcheck::random_rational_vector(rng, n),
             z = selfcheck::random_rational_vector(rng, n);
      Vector j = a.bracket(x, a.bracket(y, z)) + a.bracket(y, a.bracket(z, x)) + a.bracket(z, a.bracket(x, y));
      CHECK(is_zero(j));
    }

    CHECK(is_ideal(a, center(a)));
    CHECK(is_ideal(a, derived_subalgebra(a)));

    Vector g0 = selfcheck::random_rational_vector(rng, n);
    Subspace s = lie_span(a, {g0});
    CHECK(lie_span(a, s) == s);
    CHECK(lie_span(a, {g0, selfcheck::random_rational_vector(rng, n)}).contains(s));
    if (!s.is_full()) {
      CHECK(normalizer(a, s).contains(s));
      auto chain = normalizer_chain(a, s);
      for (std::size_t c = 1; c < chain.size(); ++c) CHECK(chain[c].dim() > chain[c - 1].dim());
    }

    Subspace d = derived_subalgebra(a);
    auto q = quotient(a, d);
    CHECK(q.algebra.dim() == n - d.dim());
    // The projection is a homomorphism.
    Vector x = selfcheck::random_rational_vector(rng, n), y = selfcheck::random_rational_vector(rng, n);
    CHECK(q.projection * a.bracket(x, y) == q.algebra.bracket(q.projection * x, q.projection * y));
  }
}

