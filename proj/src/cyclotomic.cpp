#include "giwa/cyclotomic.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace giwa {

Valuation min(const Valuation& a, const Valuation& b) { return b < a ? b : a; }

BigPoly cyclotomic_polynomial(std::int64_t d) {
  if (d < 1) throw std::invalid_argument("cyclotomic_polynomial: order must be positive");
  // Phi_d = (y^d - 1) / prod_{e | d, e < d} Phi_e, by exact division over Q.
  RationalPoly numerator = to_rational(BigPoly::monomial(1, static_cast<std::size_t>(d)) - BigPoly::constant(1));
  for (std::int64_t e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    auto [q, r] = divide(numerator, to_rational(cyclotomic_polynomial(e)));
    if (!r.is_zero()) throw std::logic_error("cyclotomic_polynomial: inexact division");
    numerator = std::move(q);
  }
  auto [l, p] = clear_denominators(numerator);
  if (l != 1) throw std::logic_error("cyclotomic_polynomial: non-integral result");
  return p;
}

namespace {

std::int64_t checked_prime_power(std::int64_t l, int i) {
  if (!is_prime(l)) throw std::invalid_argument("prime expected, got " + std::to_string(l));
  if (i < 1) throw std::invalid_argument("cyclotomic level must be at least 1");
  std::int64_t m = 1;
  for (int k = 0; k < i; ++k) {
    if (m > (std::int64_t{1} << 62) / l) throw std::overflow_error("l^i does not fit in 64 bits");
    m *= l;
  }
  return m;
}

void check_budget(const BigInt& x, std::size_t budget_bits) {
  if (bit_length(x) > budget_bits) {
    throw BudgetExceeded("intermediate integer exceeds the budget of " + std::to_string(budget_bits) + " bits");
  }
}

void check_budget(const RationalPoly& p, std::size_t budget_bits) {
  for (const auto& c : p.coefficients()) {
    check_budget(c.get_num(), budget_bits);
    check_budget(c.get_den(), budget_bits);
  }
}

}  // namespace

BigPoly phi_poly(std::int64_t l, int i) {
  const std::int64_t m = checked_prime_power(l, i);
  const std::int64_t step = m / l;
  std::vector<BigInt> c(static_cast<std::size_t>((l - 1) * step + 1), BigInt(0));
  for (std::int64_t j = 0; j < l; ++j) c[static_cast<std::size_t>(j * step)] = 1;
  return BigPoly(std::move(c));
}

CycElem::CycElem(std::int64_t l, int level) : prime_(l), level_(level), modulus_(checked_prime_power(l, level)) {
  coeffs_.assign(static_cast<std::size_t>(modulus_ - modulus_ / l), BigInt(0));
}

void CycElem::reduce_from_cyclic(std::vector<BigInt>& cyclic) {
  // y^e for e >= (l-1)M equals -sum_{j < l-1} y^(e - (l-1)M + jM), all below (l-1)M.
  const std::int64_t step = modulus_ / prime_;
  const std::int64_t dim = modulus_ - step;
  for (std::int64_t e = dim; e < modulus_; ++e) {
    BigInt& c = cyclic[static_cast<std::size_t>(e)];
    if (c == 0) continue;
    for (std::int64_t j = 0; j + 1 < prime_; ++j) cyclic[static_cast<std::size_t>(e - dim + j * step)] -= c;
    c = 0;
  }
  cyclic.resize(static_cast<std::size_t>(dim));
  coeffs_ = std::move(cyclic);
}

CycElem CycElem::from_terms(std::int64_t l, int level, const std::vector<std::pair<std::int64_t, BigInt>>& terms) {
  CycElem x(l, level);
  std::vector<BigInt> cyclic(static_cast<std::size_t>(x.modulus_), BigInt(0));
  for (const auto& [e, c] : terms) cyclic[static_cast<std::size_t>(mod_floor(e, x.modulus_))] += c;
  x.reduce_from_cyclic(cyclic);
  return x;
}

CycElem CycElem::from_coefficients(std::int64_t l, int level, const std::vector<BigInt>& coefficients) {
  std::vector<std::pair<std::int64_t, BigInt>> terms;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    if (coefficients[k] != 0) terms.emplace_back(static_cast<std::int64_t>(k), coefficients[k]);
  }
  return from_terms(l, level, terms);
}

CycElem CycElem::constant(std::int64_t l, int level, const BigInt& c) { return from_terms(l, level, {{0, c}}); }

CycElem CycElem::root_power(std::int64_t l, int level, std::int64_t k) { return from_terms(l, level, {{k, BigInt(1)}}); }

bool CycElem::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c == 0; });
}

void CycElem::check_compatible(const CycElem& other) const {
  if (prime_ != other.prime_ || level_ != other.level_) {
    throw std::invalid_argument("cyclotomic elements live in different rings");
  }
}

CycElem CycElem::conjugate(std::int64_t k) const {
  if (gcd(k, prime_) != 1) throw std::invalid_argument("conjugate: exponent must be prime to l");
  std::vector<BigInt> cyclic(static_cast<std::size_t>(modulus_), BigInt(0));
  const std::int64_t kk = mod_floor(k, modulus_);
  for (std::size_t e = 0; e < coeffs_.size(); ++e) {
    if (coeffs_[e] == 0) continue;
    // e * kk < 2^62 * ... is avoided by reducing through __int128.
    const auto target = static_cast<std::int64_t>((static_cast<__int128>(e) * kk) % modulus_);
    cyclic[static_cast<std::size_t>(target)] += coeffs_[e];
  }
  CycElem out(prime_, level_);
  out.reduce_from_cyclic(cyclic);
  return out;
}

CycElem& CycElem::operator+=(const CycElem& other) {
  check_compatible(other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

CycElem& CycElem::operator-=(const CycElem& other) {
  check_compatible(other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

CycElem& CycElem::operator*=(const CycElem& other) {
  check_compatible(other);
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
    if (other.coeffs_[j] != 0) support.push_back(j);
  std::vector<BigInt> cyclic(static_cast<std::size_t>(modulus_), BigInt(0));
  const auto m = static_cast<std::size_t>(modulus_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j : support) {
      std::size_t e = i + j;
      if (e >= m) e -= m;
      mpz_addmul(cyclic[e].get_mpz_t(), coeffs_[i].get_mpz_t(), other.coeffs_[j].get_mpz_t());
    }
  }
  reduce_from_cyclic(cyclic);
  return *this;
}

CycElem pow(const CycElem& x, unsigned long exponent) {
  CycElem result = CycElem::constant(x.prime(), x.level(), 1);
  CycElem base = x;
  while (exponent > 0) {
    if (exponent & 1UL) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

CycElem epsilon(std::int64_t l, int level, std::int64_t a) {
  return CycElem::from_terms(l, level, {{0, BigInt(2)}, {a, BigInt(-1)}, {-a, BigInt(-1)}});
}

namespace {

/// Coefficients of an element of the subfield Q(zeta^l) sit on exponents
/// divisible by l; re-index them one level down.
CycElem restrict_to_subfield(const CycElem& x) {
  CycElem down(x.prime(), x.level() - 1);
  std::vector<BigInt> coeffs(down.dimension(), BigInt(0));
  const auto& c = x.coefficients();
  for (std::size_t e = 0; e < c.size(); ++e) {
    if (c[e] == 0) continue;
    if (e % static_cast<std::size_t>(x.prime()) != 0) {
      throw std::logic_error("norm: relative norm did not land in the subfield");
    }
    coeffs[e / static_cast<std::size_t>(x.prime())] = c[e];
  }
  return CycElem::from_coefficients(x.prime(), x.level() - 1, coeffs);
}

}  // namespace

BigInt norm(const CycElem& x) {
  CycElem current = x;
  const std::int64_t l = x.prime();
  while (current.level() > 1) {
    // Gal(Q(zeta_{l^i}) / Q(zeta_{l^(i-1)})) = { zeta -> zeta^(1 + k l^(i-1)) }.
    const std::int64_t step = current.modulus() / l;
    CycElem product = current;
    for (std::int64_t k = 1; k < l; ++k) product *= current.conjugate(1 + k * step);
    current = restrict_to_subfield(product);
  }
  CycElem product = current;
  for (std::int64_t k = 2; k < l; ++k) product *= current.conjugate(k);
  const auto& c = product.coefficients();
  if (std::any_of(c.begin() + 1, c.end(), [](const BigInt& v) { return v != 0; })) {
    throw std::logic_error("norm: product of conjugates is not rational");
  }
  return c.front();
}

BigInt cyclotomic_resultant(std::int64_t l, int level, const BigPoly& f, std::size_t budget_bits) {
  const std::int64_t m = checked_prime_power(l, level);
  const std::int64_t step = m / l;
  const auto dim = static_cast<unsigned long>(m - step);
  if (f.is_zero()) return 0;

  const BigInt c = content(f);
  if (bit_length(c) * dim > budget_bits) throw BudgetExceeded("content power exceeds the bit budget");
  const BigInt c_power = ipow(c, dim);
  const BigPoly g = f.exact_div(c);
  const long d = g.degree();
  if (d == 0) return c_power * ipow(g.leading(), dim);

  // r = Phi mod g over Q, with Phi(y) = sum_{j<l} z^j and z = y^step mod g.
  const RationalPoly modulus = to_rational(g);
  RationalPoly z = RationalPoly::constant(1);
  RationalPoly base = remainder(RationalPoly::variable(), modulus);
  for (std::int64_t e = step; e > 0; e >>= 1) {
    if (e & 1) {
      z = remainder(z * base, modulus);
      check_budget(z, budget_bits);
    }
    if (e > 1) {
      base = remainder(base * base, modulus);
      check_budget(base, budget_bits);
    }
  }
  RationalPoly r = RationalPoly::constant(1);
  RationalPoly z_power = RationalPoly::constant(1);
  for (std::int64_t j = 1; j < l; ++j) {
    z_power = remainder(z_power * z, modulus);
    r += z_power;
  }
  check_budget(r, budget_bits);
  if (r.is_zero()) return 0;

  // Res(g, Phi) = lc(g)^(dim - deg r) Res(g, r), and Res(g, r) = Res(g, L r) / L^d.
  auto [denominator_lcm, integral_r] = clear_denominators(r);
  const auto lc_exponent = dim - static_cast<unsigned long>(r.degree());
  if (bit_length(g.leading()) * lc_exponent > budget_bits) throw BudgetExceeded("leading coefficient power exceeds the bit budget");
  BigInt numerator = ipow(g.leading(), lc_exponent) * resultant(g, integral_r);
  const BigInt denominator = ipow(denominator_lcm, static_cast<unsigned long>(d));
  if (!mpz_divisible_p(numerator.get_mpz_t(), denominator.get_mpz_t())) {
    throw std::logic_error("cyclotomic_resultant: inexact division");
  }
  BigInt res_g_phi;
  mpz_divexact(res_g_phi.get_mpz_t(), numerator.get_mpz_t(), denominator.get_mpz_t());
  // Res(Phi, g) = (-1)^(deg Phi * deg g) Res(g, Phi).
  if ((dim & 1UL) && (d & 1L)) res_g_phi = -res_g_phi;
  BigInt out = c_power * res_g_phi;
  check_budget(out, budget_bits);
  return out;
}

BigInt norm_by_resultant(const CycElem& x, std::size_t budget_bits) {
  return cyclotomic_resultant(x.prime(), x.level(), x.representative(), budget_bits);
}

Valuation ord_L(const CycElem& x) {
  if (x.is_zero()) return Valuation::infinity();
  return Valuation::finite(ord_p(norm(x), static_cast<unsigned long>(x.prime())));
}

nlohmann::json to_json(const CycElem& x) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : x.coefficients()) coeffs.push_back(to_decimal(c));
  return {{"l", x.prime()}, {"i", x.level()}, {"coeffs", coeffs}};
}

CycElem cyc_elem_from_json(const nlohmann::json& j) {
  try {
    const auto l = j.at("l").get<std::int64_t>();
    const auto i = j.at("i").get<int>();
    std::vector<BigInt> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(parse_decimal(c.get<std::string>()));
    CycElem x(l, i);
    if (coeffs.size() != x.dimension()) throw std::invalid_argument("coefficient count must equal phi(l^i)");
    return CycElem::from_coefficients(l, i, coeffs);
  } catch (const nlohmann::json::exception& err) {
    throw std::invalid_argument(std::string("malformed cyclotomic element JSON: ") + err.what());
  }
}

}  // namespace giwa
