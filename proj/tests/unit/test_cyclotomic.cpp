#include "giwa/cyclotomic.hpp"
#include "oracles.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <random>

using namespace giwa;
using giwa::testing::conjugate_product_norm;
using giwa::testing::random_cyc_elem;

namespace {

const std::vector<std::int64_t> kPrimes{2, 3, 5};

std::int64_t power(std::int64_t l, int i) {
  std::int64_t m = 1;
  while (i-- > 0) m *= l;
  return m;
}

/// The valuation lemma: expected ord_L(eps_{l^i}(a)).
Valuation expected_epsilon_valuation(std::int64_t l, int i, std::int64_t a) {
  const std::int64_t m = power(l, i);
  if (a % m == 0) return Valuation::infinity();
  std::int64_t s = 0;
  std::int64_t b = a < 0 ? -a : a;
  while (b % l == 0) {
    b /= l;
    ++s;
  }
  return Valuation::finite(2 * power(l, static_cast<int>(s)));
}

}  // namespace

TEST_CASE("phi_poly examples and properties") {
  CHECK(phi_poly(2, 1) == BigPoly{BigInt(1), BigInt(1)});
  CHECK(phi_poly(3, 2) == BigPoly{BigInt(1), BigInt(0), BigInt(0), BigInt(1), BigInt(0), BigInt(0), BigInt(1)});
  CHECK(phi_poly(2, 3) == BigPoly{BigInt(1), BigInt(0), BigInt(0), BigInt(0), BigInt(1)});
  for (auto l : {2L, 3L, 5L, 7L}) {
    for (int i = 1; i <= 4; ++i) {
      const BigPoly p = phi_poly(l, i);
      CHECK(p.leading() == 1);
      CHECK(p.degree() == totient(power(l, i)));
      CHECK(p.evaluate(BigInt(1)) == l);
      CHECK(p == cyclotomic_polynomial(power(l, i)));
    }
  }
  CHECK_THROWS_AS(phi_poly(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(phi_poly(2, 0), std::invalid_argument);
}

TEST_CASE("cyclotomic polynomials multiply to y^n - 1") {
  for (std::int64_t n = 1; n <= 30; ++n) {
    BigPoly product = BigPoly::constant(1);
    for (std::int64_t d = 1; d <= n; ++d)
      if (n % d == 0) product *= cyclotomic_polynomial(d);
    CHECK(product == BigPoly::monomial(1, static_cast<std::size_t>(n)) - BigPoly::constant(1));
    CHECK(cyclotomic_polynomial(n).degree() == totient(n));
  }
}

TEST_CASE("epsilon examples") {
  CHECK(epsilon(3, 1, 1) == CycElem::constant(3, 1, 3));
  CHECK(epsilon(2, 2, 2) == CycElem::constant(2, 2, 4));
  for (auto l : kPrimes) {
    for (int i = 1; i <= 3; ++i) {
      CHECK(epsilon(l, i, 0).is_zero());
      for (std::int64_t a = -10; a <= 10; ++a) CHECK(epsilon(l, i, a) == epsilon(l, i, -a));
      CHECK(epsilon(l, i, 1).dimension() == static_cast<std::size_t>(totient(power(l, i))));
    }
  }
}

TEST_CASE("ring operations") {
  std::mt19937_64 rng(31);
  for (auto l : kPrimes) {
    for (int i = 1; i <= 3; ++i) {
      const CycElem one = CycElem::constant(l, i, 1);
      const CycElem zeta = CycElem::root_power(l, i, 1);
      CHECK(pow(zeta, static_cast<unsigned long>(power(l, i))) == one);
      CHECK(CycElem::root_power(l, i, -1) * zeta == one);
      for (int trial = 0; trial < 10; ++trial) {
        const CycElem x = random_cyc_elem(rng, l, i);
        const CycElem y = random_cyc_elem(rng, l, i);
        const CycElem z = random_cyc_elem(rng, l, i);
        CHECK(x * one == x);
        CHECK(x * y == y * x);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x - x == CycElem(l, i));
        CHECK(-x + x == CycElem(l, i));
        CHECK(pow(x, 3) == x * x * x);
        CHECK(BigInt(3) * x == x + x + x);
        CHECK(x.conjugate(1) == x);
      }
    }
  }
  CHECK(epsilon(3, 1, 1) * epsilon(3, 1, 1) == CycElem::constant(3, 1, 9));
  CHECK_THROWS_AS(CycElem(2, 2) + CycElem(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(CycElem(2, 2) * CycElem(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(CycElem(2, 2).conjugate(2), std::invalid_argument);
}

TEST_CASE("canonical form reduces high exponents") {
  // In Z[y]/(y^2 + y + 1): y^2 = -1 - y.
  const CycElem x = CycElem::from_coefficients(3, 1, {BigInt(0), BigInt(0), BigInt(1)});
  CHECK(x.coefficients() == std::vector<BigInt>{BigInt(-1), BigInt(-1)});
  // Negative exponents are read modulo l^i.
  CHECK(CycElem::from_terms(5, 1, {{-1, BigInt(1)}}) == CycElem::root_power(5, 1, 4));
}

TEST_CASE("norm examples") {
  CHECK(norm(epsilon(3, 1, 1)) == 9);
  for (auto l : kPrimes) {
    for (int i = 1; i <= 4; ++i) {
      const CycElem one_minus_zeta = CycElem::constant(l, i, 1) - CycElem::root_power(l, i, 1);
      CHECK(norm(one_minus_zeta) == l);
      CHECK(norm_by_resultant(one_minus_zeta) == l);
      CHECK(abs(norm(CycElem::root_power(l, i, 1))) == 1);
      CHECK(norm(CycElem(l, i)) == 0);
    }
  }
}

TEST_CASE("norm by descent, by resultant, and by conjugate product agree") {
  std::mt19937_64 rng(32);
  for (auto l : kPrimes) {
    for (int i = 1; i <= 4; ++i) {
      for (int trial = 0; trial < 12; ++trial) {
        const CycElem x = random_cyc_elem(rng, l, i);
        const BigInt n = norm(x);
        CHECK(n == norm_by_resultant(x));
        if (i <= 2) CHECK(n == conjugate_product_norm(x));
        if (!x.is_zero()) CHECK(n != 0);
      }
    }
  }
}

TEST_CASE("norm is multiplicative") {
  std::mt19937_64 rng(33);
  for (auto l : kPrimes) {
    for (int i = 1; i <= 3; ++i) {
      for (int trial = 0; trial < 10; ++trial) {
        const CycElem x = random_cyc_elem(rng, l, i);
        const CycElem y = random_cyc_elem(rng, l, i);
        CHECK(norm(x * y) == norm(x) * norm(y));
      }
    }
  }
}

TEST_CASE("cyclotomic_resultant on general polynomials") {
  std::mt19937_64 rng(34);
  std::uniform_int_distribution<long> coeff(-7, 7);
  for (auto l : kPrimes) {
    for (int i = 1; i <= 3; ++i) {
      for (int trial = 0; trial < 15; ++trial) {
        std::vector<BigInt> c(std::uniform_int_distribution<std::size_t>(1, 12)(rng));
        for (auto& v : c) v = coeff(rng) * (trial % 4 == 0 ? 6 : 1);
        const BigPoly f(c);
        CHECK(cyclotomic_resultant(l, i, f) == resultant_sylvester(phi_poly(l, i), f));
      }
    }
  }
  CHECK(cyclotomic_resultant(3, 2, BigPoly()) == 0);
  CHECK(cyclotomic_resultant(3, 2, BigPoly::constant(2)) == 64);
  // Phi_9 divides y^9 - 1.
  CHECK(cyclotomic_resultant(3, 2, BigPoly::monomial(1, 9) - BigPoly::constant(1)) == 0);
  CHECK_THROWS_AS(cyclotomic_resultant(2, 12, BigPoly{BigInt(7), BigInt(-3), BigInt(5)}, 64), BudgetExceeded);
}

TEST_CASE("ord_L examples") {
  for (auto l : kPrimes) {
    for (int i = 1; i <= 4; ++i) {
      CHECK(ord_L(epsilon(l, i, 1)) == Valuation::finite(2));
      CHECK(ord_L(epsilon(l, i, power(l, i))).is_infinite());
    }
  }
  CHECK(ord_L(epsilon(2, 2, 2)) == Valuation::finite(4));
  CHECK(ord_L(CycElem(5, 2)) == Valuation::infinity());
}

TEST_CASE("valuation lemma holds exhaustively") {
  for (auto l : kPrimes) {
    for (int i = 1; i <= 4; ++i) {
      const std::int64_t m = power(l, i);
      for (std::int64_t a = -2 * m; a <= 2 * m; ++a) {
        CAPTURE(l);
        CAPTURE(i);
        CAPTURE(a);
        const Valuation v = ord_L(epsilon(l, i, a));
        CHECK(v == expected_epsilon_valuation(l, i, a));
        if (a != 0 && a % m != 0) CHECK(v >= Valuation::finite(2));
      }
    }
  }
}

TEST_CASE("eps(a) = eps(1) (a^2 - sum_{k<a} (a - k) eps(k))") {
  for (auto l : kPrimes) {
    for (int i = 1; i <= 3; ++i) {
      for (std::int64_t a = 1; a <= 12; ++a) {
        CycElem inner = CycElem::constant(l, i, a * a);
        for (std::int64_t k = 1; k < a; ++k) inner -= BigInt(static_cast<long>(a - k)) * epsilon(l, i, k);
        CHECK(epsilon(l, i, a) == epsilon(l, i, 1) * inner);
      }
    }
  }
}

TEST_CASE("ord_L is an ultrametric, additive valuation") {
  std::mt19937_64 rng(35);
  for (auto l : kPrimes) {
    for (int i = 1; i <= 3; ++i) {
      for (int trial = 0; trial < 25; ++trial) {
        // Multiplying by powers of (1 - zeta) spreads the valuations.
        const CycElem pi = CycElem::constant(l, i, 1) - CycElem::root_power(l, i, 1);
        const CycElem x = random_cyc_elem(rng, l, i) * pow(pi, static_cast<unsigned long>(trial % 4));
        const CycElem y = random_cyc_elem(rng, l, i) * pow(pi, static_cast<unsigned long>(trial % 3));
        const Valuation vx = ord_L(x);
        const Valuation vy = ord_L(y);
        const Valuation vs = ord_L(x + y);
        CHECK(vs >= min(vx, vy));
        if (vx != vy) CHECK(vs == min(vx, vy));
        if (!vx.is_infinite() && !vy.is_infinite()) CHECK(ord_L(x * y) == vx + vy);
      }
    }
  }
}

TEST_CASE("Valuation arithmetic") {
  CHECK(Valuation::finite(2) + Valuation::finite(3) == Valuation::finite(5));
  CHECK((Valuation::finite(2) + Valuation::infinity()).is_infinite());
  CHECK(Valuation::finite(100) < Valuation::infinity());
  CHECK(min(Valuation::infinity(), Valuation::finite(7)) == Valuation::finite(7));
  CHECK(Valuation::infinity().to_string() == "inf");
  CHECK_THROWS_AS(Valuation::infinity().value(), std::domain_error);
}

TEST_CASE("CycElem JSON round trip") {
  std::mt19937_64 rng(36);
  const CycElem x = random_cyc_elem(rng, 3, 2, 1000);
  const nlohmann::json j = to_json(x);
  CHECK(j.at("l") == 3);
  CHECK(j.at("i") == 2);
  CHECK(j.at("coeffs").size() == 6);
  CHECK(cyc_elem_from_json(j) == x);
  CHECK_THROWS_AS(cyc_elem_from_json(nlohmann::json::parse(R"({"l":3,"i":2,"coeffs":["1"]})")), std::invalid_argument);
  CHECK_THROWS_AS(cyc_elem_from_json(nlohmann::json::parse(R"({"l":3})")), std::invalid_argument);
}
