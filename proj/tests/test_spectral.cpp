#include <algorithm>
#include <random>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "support.hpp"

using namespace heintze;
using support::error_code;
using support::span;

TEST_CASE("Leibniz rule", "[spectral]") {
  auto k1 = corpus::heisenberg(1);
  CHECK_NOTHROW(validate_derivation(k1, Matrix::diagonal(corpus::ints({1, 1, 2}))));
  CHECK_NOTHROW(validate_derivation(k1, corpus::heisenberg_block_matrix()));
  try {
    validate_derivation(k1, Matrix::identity(3));
    FAIL("identity is not a derivation of a non-abelian algebra");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LeibnizViolation);
    CHECK(e.where() == std::vector<std::size_t>{0, 1});
  }
  CHECK_NOTHROW(validate_derivation(corpus::abelian(3), Matrix::identity(3)));
  auto n = build_algebra(corpus::triangle_graph());
  CHECK_NOTHROW(validate_derivation(n, Matrix::diagonal(corpus::ints({1, 2, 3, 3, 5, 4}))));
  CHECK(error_code([&] { validate_derivation(k1, Matrix::identity(2)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("characteristic polynomial", "[spectral]") {
  const Matrix alpha = Matrix::diagonal(corpus::ints({1, 2, 3, 3, 5, 4}));
  CHECK(char_poly(alpha) == Polynomial::from_roots(corpus::ints({1, 2, 3, 3, 4, 5})));

  // Companion matrix of x^3 - 2x^2 + x.
  Matrix c = corpus::rows({{0, 0, 0}, {1, 0, -1}, {0, 1, 2}});
  CHECK(char_poly(c) == Polynomial(corpus::ints({0, 1, -2, 1})));
  CHECK(char_poly(c) == oracle::char_poly_by_interpolation(c));
}

TEST_CASE("characteristic polynomial matches determinant oracle on random matrices", "[spectral][property]") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = make_rational(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3);
    CHECK(char_poly(m) == oracle::char_poly_by_interpolation(m));
  }
}

TEST_CASE("rational eigenvalues", "[spectral]") {
  auto beta = Matrix::diagonal(corpus::ints({1, 2, 3, 3, 3, 6}));
  CHECK(expand(rational_eigenvalues(beta)) == corpus::ints({1, 2, 3, 3, 3, 6}));

  auto mixed = rational_roots(Polynomial::from_roots({make_rational(-1, 2), make_rational(7, 3), make_rational(7, 3)}));
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0].value == make_rational(-1, 2));
  CHECK(mixed[1].multiplicity == 2);

  CHECK(error_code([] { rational_eigenvalues(corpus::rows({{0, -1}, {1, 0}})); }) ==
        ErrorCode::IrrationalOrComplexSpectrum);
  CHECK(error_code([] { rational_eigenvalues(corpus::rows({{0, 2}, {1, 0}})); }) ==
        ErrorCode::IrrationalOrComplexSpectrum);
}

TEST_CASE("roots with many distinct large-denominator values", "[spectral]") {
  std::vector<Rational> roots;
  for (long k = 1; k <= 14; ++k) roots.push_back(make_rational(19 * k, 7));
  for (long k = 1; k <= 4; ++k) roots.push_back(make_rational(-k, 11));
  roots.push_back(0);
  roots.push_back(make_rational(38, 7));  // repeated
  std::vector<Rational> sorted = roots;
  std::sort(sorted.begin(), sorted.end());
  CHECK(expand(rational_roots(Polynomial::from_roots(roots))) == sorted);

  // (x^2 - 2)(x - 3): the rational part is found, the rest is refused.
  const Polynomial mixed = Polynomial(corpus::ints({-2, 0, 1})) * Polynomial::from_roots(corpus::ints({3}));
  CHECK(error_code([&] { rational_roots(mixed); }) == ErrorCode::IrrationalOrComplexSpectrum);
}

TEST_CASE("generalized eigenspaces", "[spectral]") {
  auto alpha = corpus::gamma1();
  const auto& e = alpha.eigen;
  REQUIRE(e.eigenvalues == corpus::ints({1, 2, 3, 4, 5}));
  CHECK(e.spaces[0] == span(6, {0}));
  CHECK(e.spaces[1] == span(6, {1}));
  CHECK(e.spaces[2] == span(6, {2, 3}));
  CHECK(e.spaces[3] == span(6, {5}));
  CHECK(e.spaces[4] == span(6, {4}));

  auto jb = corpus::heisenberg_block();
  CHECK(jb.eigen.spaces[0] == span(3, {0, 1}));
  CHECK(jb.eigen.spaces[1] == span(3, {2}));
  CHECK(eigenspace(jb.matrix(), 1) == span(3, {0}));
}

TEST_CASE("Jordan data", "[spectral]") {
  auto jb = corpus::heisenberg_block();
  REQUIRE(jb.jordan.spectrum.size() == 2);
  CHECK(jb.jordan.spectrum[0].block_sizes == std::vector<std::size_t>{2});
  CHECK(jb.jordan.spectrum[1].block_sizes == std::vector<std::size_t>{1});
  CHECK(jb.matrix() * jb.jordan.basis == jb.jordan.basis * jordan_matrix(jb.jordan));
  CHECK(block_sizes_from_ranks(jb.matrix(), 1) == oracle::block_sizes(jb.matrix(), 1));

  auto g2 = corpus::gamma2();
  for (const auto& ej : g2.jordan.spectrum)
    for (auto s : ej.block_sizes) CHECK(s == 1);
  CHECK(g2.jordan.spectrum[2].block_sizes == std::vector<std::size_t>{1, 1, 1});

  auto k2 = corpus::k2_block();
  CHECK(k2.jordan.spectrum[0].block_sizes == std::vector<std::size_t>{2, 2});
}

TEST_CASE("Jordan data agrees with the rank oracle on conjugated Jordan matrices", "[spectral][property]") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    // Random Jordan matrix with small integer eigenvalues, conjugated.
    const std::size_t n = 2 + rng() % 5;
    Matrix j(n, n);
    for (std::size_t i = 0; i < n; ++i) j(i, i) = static_cast<long>(1 + rng() % 3);
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (j(i, i) == j(i + 1, i + 1) && rng() % 2) j(i, i + 1) = 1;
    const Matrix p = corpus::random_invertible(n, rng);
    const Matrix m = p * j * inverse(p);
    const JordanData d = jordan_data(m);
    CHECK(m * d.basis == d.basis * jordan_matrix(d));
    for (const auto& ej : d.spectrum) CHECK(ej.block_sizes == oracle::block_sizes(m, ej.eigenvalue));
  }
}

TEST_CASE("semisimple and nilpotent parts", "[spectral]") {
  auto jb = corpus::heisenberg_block();
  auto split = semisimple_nilpotent_split(jb.derivation);
  CHECK(split.delta.matrix() == Matrix::diagonal(corpus::ints({1, 1, 2})));
  Matrix nu(3, 3);
  nu(0, 1) = 1;  // Y -> X
  CHECK(split.nu.matrix() == nu);
  CHECK(split.delta.matrix() * split.nu.matrix() == split.nu.matrix() * split.delta.matrix());

  auto g1 = corpus::gamma1();
  auto s1 = semisimple_nilpotent_split(g1.derivation);
  CHECK(s1.delta.matrix() == g1.matrix());
  CHECK(s1.nu.matrix().is_zero());
}

TEST_CASE("grading by generalized eigenspaces", "[spectral]") {
  auto g1 = corpus::gamma1();
  auto report = grading_check(g1.derivation, g1.eigen);
  CHECK(report.passed);
  CHECK(report.pairs_checked > 0);
  // [V1, V2] lands in V3.
  CHECK(g1.eigen.spaces[2].contains(g1.algebra->bracket(unit_vector(6, 0), unit_vector(6, 1))));

  for (const auto& entry : corpus::builtin()) {
    INFO(entry.name);
    CHECK(grading_check(entry.data.derivation, entry.data.eigen).passed);
  }

  // A fake decomposition that breaks the grading is reported.
  EigenDecomposition fake = g1.eigen;
  std::swap(fake.spaces[3], fake.spaces[4]);
  CHECK_FALSE(grading_check(*g1.algebra, fake).passed);
}

TEST_CASE("class C and the Jordan basis audit", "[spectral]") {
  CHECK(in_class_c(corpus::heisenberg(1)));
  CHECK(in_class_c(corpus::abelian(2)));
  CHECK_FALSE(in_class_c(build_algebra(corpus::triangle_graph())));
  CHECK(error_code([] {
          auto g = corpus::gamma1();
          jordan_basis_bracket_audit(g.derivation, g.jordan);
        }) == ErrorCode::NotClassC);

  auto jb = corpus::heisenberg_block();
  CHECK(jordan_basis_bracket_audit(jb.derivation, jb.jordan).passed);

  auto k2 = corpus::k2_block();
  CHECK(jordan_basis_bracket_audit(k2.derivation, k2.jordan).passed);

  // Swapping the eigenvector and the top of a chain breaks the pattern.
  JordanData broken = k2.jordan;
  const auto& b = broken.blocks[0];
  for (std::size_t r = 0; r < broken.basis.rows(); ++r)
    std::swap(broken.basis(r, b.first_column), broken.basis(r, b.first_column + 1));
  CHECK_FALSE(jordan_basis_bracket_audit(k2.derivation, broken).passed);
}
