#include "giwa/bigint.hpp"
#include "giwa/matrix.hpp"
#include "giwa/polynomial.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace giwa;
using giwa::testing::laplace_determinant;
using giwa::testing::leibniz_determinant;

namespace {

BigMatrix random_matrix(std::mt19937_64& rng, Index n, long range) {
  std::uniform_int_distribution<long> dist(-range, range);
  BigMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = dist(rng);
  return m;
}

BigPoly random_poly(std::mt19937_64& rng, int max_degree, long range) {
  std::uniform_int_distribution<long> dist(-range, range);
  const int deg = std::uniform_int_distribution<int>(0, max_degree)(rng);
  std::vector<BigInt> c;
  for (int k = 0; k <= deg; ++k) c.emplace_back(dist(rng));
  return BigPoly(std::move(c));
}

}  // namespace

TEST_CASE("ord_p and integer helpers") {
  CHECK(ord_p(BigInt(96), 2UL) == 5);
  CHECK(ord_p(BigInt(-81), BigInt(3)) == 4);
  CHECK(ord_p(BigInt(7), 5UL) == 0);
  CHECK_THROWS_AS(ord_p(BigInt(0), 2UL), std::domain_error);
  CHECK(ipow(BigInt(2), 100) == BigInt("1267650600228229401496703205376"));
  CHECK(bit_length(BigInt(0)) == 0);
  CHECK(bit_length(BigInt(-8)) == 4);
  CHECK(parse_decimal("-12345678901234567890") == BigInt("-12345678901234567890"));
  CHECK_THROWS_AS(parse_decimal("12a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal(""), std::invalid_argument);
  CHECK(mod_floor(-3, 8) == 5);
  CHECK(gcd(-12, 18) == 6);
  CHECK(totient(9) == 6);
  CHECK(totient(12) == 4);
  CHECK(is_prime(2));
  CHECK(is_prime(577));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("factored form") {
  CHECK(factored_form(ipow(2, 34) * 577 * 577) == "2^34 * 577^2");
  CHECK(factored_form(BigInt(27)) == "3^3");
  CHECK(factored_form(BigInt(1)) == "1");
  // 1000003 * 1000033 has no factor below the trial limit.
  const BigInt semiprime = BigInt(1000003) * 1000033;
  CHECK(factored_form(semiprime) == to_decimal(semiprime));
  CHECK(factored_form(BigInt(2) * 1000003) == "2 * 1000003");
}

TEST_CASE("Bareiss determinant matches the Leibniz expansion") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = std::uniform_int_distribution<Index>(0, 6)(rng);
    BigMatrix m = random_matrix(rng, n, trial % 3 == 0 ? 1 : 9);
    if (n > 1 && trial % 5 == 0) m.row(n - 1) = m.row(0);
    CHECK(bareiss_determinant(m) == leibniz_determinant(m));
  }
}

TEST_CASE("banded SPD determinant matches dense Bareiss") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = std::uniform_int_distribution<Index>(1, 30)(rng);
    const Index w = std::uniform_int_distribution<Index>(1, 5)(rng);
    // Diagonally dominant symmetric band matrix, hence positive definite.
    BigMatrix m = BigMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < std::min(n, i + w + 1); ++j) {
        const long v = std::uniform_int_distribution<long>(-3, 0)(rng);
        m(i, j) = v;
        m(j, i) = v;
      }
    }
    SymmetricSparse s{n, std::vector<std::vector<std::pair<Index, BigInt>>>(static_cast<std::size_t>(n))};
    for (Index i = 0; i < n; ++i) {
      BigInt row = 1;
      for (Index j = 0; j < n; ++j) row += abs(m(i, j));
      m(i, i) = row;
      for (Index j = 0; j < n; ++j)
        if (m(i, j) != 0) s.rows[static_cast<std::size_t>(i)].emplace_back(j, m(i, j));
    }
    CHECK(half_bandwidth(m) <= w);
    CHECK(banded_spd_determinant(s, w) == bareiss_determinant(m));
  }
}

TEST_CASE("subresultant resultant matches the Sylvester determinant") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const BigPoly a = random_poly(rng, 7, 6);
    const BigPoly b = random_poly(rng, 7, 6);
    if (a.is_zero() || b.is_zero()) continue;
    CAPTURE(to_string(a, "y"));
    CAPTURE(to_string(b, "y"));
    CHECK(resultant(a, b) == resultant_sylvester(a, b));
  }
}

TEST_CASE("resultant of split polynomials is the product of root differences") {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<long> root(-6, 6);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<long> ra(std::uniform_int_distribution<std::size_t>(1, 5)(rng));
    std::vector<long> rb(std::uniform_int_distribution<std::size_t>(1, 5)(rng));
    BigPoly a = BigPoly::constant(1);
    BigPoly b = BigPoly::constant(1);
    for (auto& r : ra) a *= BigPoly{BigInt(-(r = root(rng))), BigInt(1)};
    for (auto& r : rb) b *= BigPoly{BigInt(-(r = root(rng))), BigInt(1)};
    BigInt expected = 1;
    for (long x : ra)
      for (long y : rb) expected *= x - y;
    CHECK(resultant(a, b) == expected);
  }
}

TEST_CASE("resultant edge cases") {
  const BigPoly a{BigInt(1), BigInt(2), BigInt(3)};
  CHECK(resultant(a, BigPoly()) == 0);
  CHECK(resultant(a, BigPoly::constant(5)) == 25);
  CHECK(resultant(BigPoly::constant(5), a) == 25);
  // Res(b, a) = (-1)^(deg a deg b) Res(a, b).
  const BigPoly b{BigInt(-1), BigInt(0), BigInt(4), BigInt(1)};
  CHECK(resultant(b, a) == resultant(a, b));
  const BigPoly c{BigInt(2), BigInt(1)};
  CHECK(resultant(c, b) == -resultant(b, c));
}

TEST_CASE("interpolation recovers integer polynomials and rejects others") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const BigPoly p = random_poly(rng, 9, 1000);
    const auto xs = interpolation_points(static_cast<std::size_t>(std::max(0L, p.degree()) + 1 + trial % 3));
    std::vector<BigInt> ys;
    for (const auto& x : xs) ys.push_back(p.evaluate(x));
    CHECK(interpolate(xs, ys) == p);
  }
  // u(u - 1) / 2 takes integer values but has a non-integer coefficient.
  const auto xs = interpolation_points(3);
  std::vector<BigInt> ys;
  for (const auto& x : xs) ys.push_back(x * (x - 1) / 2);
  CHECK_THROWS_AS(interpolate(xs, ys), std::domain_error);
}

TEST_CASE("polynomial determinant matches Laplace expansion over Z[u]") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    std::vector<std::vector<BigPoly>> m(n, std::vector<BigPoly>(n));
    for (auto& row : m)
      for (auto& e : row) e = random_poly(rng, 2, 4);
    auto at = [&](const BigInt& u) {
      BigMatrix v(static_cast<Index>(n), static_cast<Index>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v(static_cast<Index>(i), static_cast<Index>(j)) = m[i][j].evaluate(u);
      return v;
    };
    const BigPoly expected = laplace_determinant(m);
    CHECK(determinant_polynomial(at, 2 * n) == expected);
    CHECK(determinant_polynomial(at, 2 * n, true) == expected);
  }
}

TEST_CASE("polynomial basics") {
  const BigPoly p{BigInt(1), BigInt(-4), BigInt(3)};
  CHECK(to_string(p) == "1 - 4u + 3u^2");
  CHECK(to_string(BigPoly()) == "0");
  CHECK(to_string(BigPoly{BigInt(0), BigInt(-1)}, "T") == "-T");
  CHECK(p.degree() == 2);
  CHECK(BigPoly().degree() == BigPoly::kZeroDegree);
  CHECK(p.derivative() == BigPoly{BigInt(-4), BigInt(6)});
  CHECK(pow(BigPoly{BigInt(1), BigInt(1)}, 3) == BigPoly{BigInt(1), BigInt(3), BigInt(3), BigInt(1)});
  CHECK(content(BigPoly{BigInt(6), BigInt(-9)}) == -3);
  const BigPoly a{BigInt(3), BigInt(0), BigInt(1), BigInt(2)};
  const BigPoly b{BigInt(1), BigInt(3)};
  // prem(a, b) = lc(b)^(deg a - deg b + 1) a mod b: a(-1/3) scaled by 27.
  CHECK(pseudo_remainder(a, b) == BigPoly::constant(27 * 3 + 3 - 2));
  auto [q, r] = divide(to_rational(a), to_rational(b));
  CHECK(q * to_rational(b) + r == to_rational(a));
  auto [l, integral] = clear_denominators(RationalPoly{BigRational(1, 2), BigRational(2, 3)});
  CHECK(l == 6);
  CHECK(integral == BigPoly{BigInt(3), BigInt(4)});
}
