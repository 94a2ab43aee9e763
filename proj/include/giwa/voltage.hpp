#pragma once

// Cyclic covers given by Z/mZ voltage assignments, Artin matrices A(sigma)
// and orbit L-polynomials h_X(u, Psi_d).

#include "giwa/multigraph.hpp"
#include "giwa/polynomial.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace giwa {

/// A valid base multigraph with voltages in Z/mZ such that the derived cover
/// is connected. Voltages are stored reduced to [0, m).
class VoltageGraph {
 public:
  /// Throws std::invalid_argument unless the base is a valid Serre
  /// multigraph, voltage(inverse e) = -voltage(e) mod m, and the net
  /// voltages of the fundamental cycles generate Z/mZ.
  static VoltageGraph create(Multigraph base, std::int64_t modulus, std::vector<std::int64_t> voltages);

  const Multigraph& base() const { return base_; }
  std::int64_t modulus() const { return modulus_; }
  std::int64_t voltage(EdgeId e) const { return voltages_.at(static_cast<std::size_t>(e)); }
  const std::vector<std::int64_t>& voltages() const { return voltages_; }

  /// The same base with voltages read modulo d, for d | m.
  VoltageGraph reduced_modulo(std::int64_t d) const;

 private:
  VoltageGraph(Multigraph base, std::int64_t modulus, std::vector<std::int64_t> voltages)
      : base_(std::move(base)), modulus_(modulus), voltages_(std::move(voltages)) {}

  Multigraph base_;
  std::int64_t modulus_ = 1;
  std::vector<std::int64_t> voltages_;
};

/// gcd of m and the net voltages around a basis of fundamental cycles; the
/// cover is connected iff this is 1.
std::int64_t cycle_voltage_gcd(const Multigraph& base, std::int64_t modulus, const std::vector<std::int64_t>& voltages);

/// Bouquet B_t whose j-th loop carries a_j and -a_j. Throws
/// std::invalid_argument if a is empty or gcd(a_1, .., a_t, m) != 1.
VoltageGraph cayley_serre(std::int64_t modulus, const std::vector<std::int64_t>& generators);

/// Vertex (v, k) has id v * m + k. Directed edge (e, k) has id e * m + k and
/// runs from (o(e), k) to (t(e), k + voltage(e)).
Multigraph derived_cover(const VoltageGraph& vg);

/// A(sigma)_ij = number of directed base edges from v_i to v_j with voltage
/// sigma, i.e. edges from w_i = (v_i, 0) to w_j^sigma in the cover.
BigMatrix artin_A_sigma(const VoltageGraph& vg, std::int64_t sigma);

/// h_X(u, Psi_d) = Res_y(Phi_d(y), det(I - A(y) u + (D - I) u^2)) for d | m,
/// where A(y) = sum_sigma A(sigma) y^sigma. d = 1 gives ihara_h(base).
BigPoly orbit_h_poly(const VoltageGraph& vg, std::int64_t d, bool parallel = false);

/// Positive divisors of n in increasing order.
std::vector<std::int64_t> divisors(std::int64_t n);

struct ProductFormulaReport {
  bool holds = false;
  BigPoly lhs;  // h of the derived cover
  BigPoly rhs;  // product of orbit polynomials over d | m
};

/// h_Y(u) = prod_{d | m} h_X(u, Psi_d).
ProductFormulaReport verify_product_formula(const VoltageGraph& vg, bool parallel = false);

struct IntegerDecompositionReport {
  bool holds = false;
  bool nonvanishing = false;  // every h_X(1, Psi_d) with d > 1 is nonzero
  BigInt kappa_base;
  BigInt kappa_cover;
  std::vector<BigInt> orbit_values;  // h_X(1, Psi_d) for the divisors d > 1, ascending
  BigInt lhs;                        // m * kappa_Y
  BigInt rhs;                        // kappa_X * prod h_X(1, Psi_d)
};

/// m * kappa_Y = kappa_X * prod_{d | m, d > 1} h_X(1, Psi_d). Throws
/// std::domain_error when chi(base) = 0.
IntegerDecompositionReport verify_integer_decomposition(const VoltageGraph& vg, bool parallel = false);

/// {"m": m, "vertices": g, "edges": [{"u", "v", "voltage"}, ...]}, one entry
/// per undirected edge; the voltage belongs to the direction u -> v.
nlohmann::json to_json(const VoltageGraph& vg);
/// Throws std::invalid_argument on malformed or invalid input.
VoltageGraph voltage_graph_from_json(const nlohmann::json& j);

}  // namespace giwa
