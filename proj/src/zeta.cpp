#include "giwa/zeta.hpp"

#include <nlohmann/json.hpp>

namespace giwa {

BigPoly ihara_h(const Multigraph& x, bool parallel) {
  const BigMatrix a = adjacency_matrix(x);
  const BigMatrix d = valency_matrix(x);
  const Index g = x.vertex_count();
  auto at = [&](const BigInt& u) {
    const BigInt u2 = u * u;
    BigMatrix m(g, g);
    for (Index i = 0; i < g; ++i) {
      for (Index j = 0; j < g; ++j) {
        BigInt v = -a(i, j) * u;
        if (i == j) v += 1 + (d(i, i) - 1) * u2;
        m(i, j) = std::move(v);
      }
    }
    return m;
  };
  return determinant_polynomial(at, static_cast<std::size_t>(2 * g), parallel);
}

BigPoly ZetaReciprocal::expanded() const {
  if (exponent < 0) throw std::domain_error("Z_X is not a polynomial for chi(X) > 0");
  return pow(BigPoly{1, 0, -1}, static_cast<unsigned long>(exponent)) * h;
}

ZetaReciprocal ihara_Z(const Multigraph& x, bool parallel) {
  return {-euler_characteristic(x), ihara_h(x, parallel)};
}

SpecialValues special_values(const BigPoly& h, const Multigraph& x) {
  SpecialValues out;
  const BigPoly dh = h.derivative();
  out.h_at_1 = h.evaluate(BigInt(1));
  out.dh_at_1 = dh.evaluate(BigInt(1));
  out.d2h_at_1 = dh.derivative().evaluate(BigInt(1));
  const std::int64_t chi = euler_characteristic(x);
  if (chi != 0) {
    const BigInt divisor = BigInt(-2) * BigInt(static_cast<long>(chi));
    if (!mpz_divisible_p(out.dh_at_1.get_mpz_t(), divisor.get_mpz_t())) {
      throw std::logic_error("special_values: h'(1) = " + to_decimal(out.dh_at_1) + " is not divisible by -2 chi(X)");
    }
    BigInt kappa = out.dh_at_1 / divisor;
    if (kappa <= 0) throw std::logic_error("special_values: implied spanning tree count is not positive");
    out.kappa_implied = std::move(kappa);
  }
  return out;
}

nlohmann::json poly_to_json(const BigPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : p.coefficients()) arr.push_back(to_decimal(c));
  return arr;
}

BigPoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be an array of decimal strings");
  std::vector<BigInt> coeffs;
  for (const auto& c : j) {
    if (!c.is_string()) throw std::invalid_argument("polynomial coefficients must be decimal strings");
    coeffs.push_back(parse_decimal(c.get<std::string>()));
  }
  return BigPoly(std::move(coeffs));
}

}  // namespace giwa
