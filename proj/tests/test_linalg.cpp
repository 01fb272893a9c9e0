#include <random>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace heintze;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long spread = 3) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = static_cast<long>(rng() % (2 * spread + 1)) - spread;
  return m;
}

}  // namespace

TEST_CASE("rational parsing accepts integers and fractions", "[rational]") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-1/2") == make_rational(-1, 2));
  CHECK(parse_rational("6/4") == make_rational(3, 2));
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("0.5"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("rank agrees with an independent elimination", "[matrix]") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    Matrix m = random_matrix(rng, r, c, 1);
    CHECK(rank(m) == oracle::rank(m));
  }
}

TEST_CASE("inverse and kernel", "[matrix]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m = random_matrix(rng, 4, 4);
    if (oracle::determinant(m) == 0) {
      CHECK_THROWS_AS(inverse(m), Error);
      continue;
    }
    CHECK(m * inverse(m) == Matrix::identity(4));
  }
  Matrix m = corpus::rows({{1, 2, 3}, {2, 4, 6}});
  auto ker = kernel(m);
  REQUIRE(ker.size() == 2);
  for (const auto& v : ker) CHECK(is_zero(m * v));
}

TEST_CASE("subspace form is canonical", "[subspace]") {
  const std::size_t n = 4;
  Subspace a = Subspace::span(n, {unit_vector(n, 0) + unit_vector(n, 1), unit_vector(n, 1)});
  Subspace b = Subspace::span(n, {unit_vector(n, 0), 2 * unit_vector(n, 1) - unit_vector(n, 0)});
  CHECK(a == b);
  CHECK(a.dim() == 2);
  CHECK(a.contains(unit_vector(n, 0)));
  CHECK_FALSE(a.contains(unit_vector(n, 2)));
  CHECK(Subspace::full(n).contains(a));
  CHECK(Subspace::zero(n).is_zero());
}

TEST_CASE("subspace coordinates reconstruct the vector", "[subspace]") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vector> gens;
    for (int g = 0; g < 3; ++g) gens.push_back(random_matrix(rng, 1, 5).row(0));
    Subspace s = Subspace::span(5, gens);
    Vector v = make_rational(1, 3) * gens[0] - gens[2];
    Vector c = s.coordinates(v);
    Vector back(5, Rational(0));
    auto basis = s.basis();
    for (std::size_t i = 0; i < basis.size(); ++i) back = back + c[i] * basis[i];
    CHECK(back == v);
  }
}

TEST_CASE("polynomial arithmetic", "[polynomial]") {
  Polynomial p = Polynomial::from_roots({Rational(1), Rational(2), Rational(2)});
  CHECK(p.degree() == 3);
  CHECK(p(Rational(2)) == 0);
  CHECK(p(Rational(0)) == -4);
  CHECK(p.deflate(Rational(1)) == Polynomial::from_roots({Rational(2), Rational(2)}));
  CHECK(Polynomial({Rational(2), Rational(4)}).monic() == Polynomial({make_rational(1, 2), Rational(1)}));
  CHECK(p.to_string() == "x^3 - 5x^2 + 8x - 4");
}

TEST_CASE("integer factoring", "[polynomial]") {
  const Integer n("1000000016000000063", 10);  // 1000000007 * 1000000009
  auto f = factorize(n);
  REQUIRE(f.size() == 2);
  CHECK(f.begin()->first == Integer("1000000007", 10));
  CHECK(divisors(Integer(12)).size() == 6);
}

TEST_CASE("polynomial division, derivative and gcd", "[polynomial]") {
  const Polynomial a = Polynomial::from_roots(corpus::ints({1, 2, 2, 5}));
  const Polynomial b = Polynomial::from_roots(corpus::ints({2, 5, 7}));
  CHECK(gcd(a, b) == Polynomial::from_roots(corpus::ints({2, 5})));
  auto [q, r] = a.divmod(Polynomial::from_roots(corpus::ints({2})));
  CHECK(r.is_zero());
  CHECK(q == Polynomial::from_roots(corpus::ints({1, 2, 5})));
  CHECK(Polynomial(corpus::ints({4, 3, 0, 2})).derivative() == Polynomial(corpus::ints({3, 0, 6})));
  auto [q2, r2] = Polynomial(corpus::ints({1, 0, 1})).divmod(Polynomial(corpus::ints({0, 1})));
  CHECK(q2 == Polynomial(corpus::ints({0, 1})));
  CHECK(r2 == Polynomial::constant(1));
}
