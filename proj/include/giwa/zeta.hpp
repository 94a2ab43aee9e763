#pragma once

// Ihara zeta functions through the three-term determinant formula.

#include "giwa/multigraph.hpp"
#include "giwa/polynomial.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>

namespace giwa {

/// h_X(u) = det(I - A u + (D - I) u^2), degree 2 g_X.
BigPoly ihara_h(const Multigraph& x, bool parallel = false);

/// Z_X(u) = 1 / zeta_X(u) = (1 - u^2)^exponent * h, with exponent = -chi(X).
struct ZetaReciprocal {
  std::int64_t exponent = 0;
  BigPoly h;

  BigPoly expanded() const;
  /// deg Z_X = 2 exponent + deg h = 2|E_X|.
  long degree() const { return 2 * exponent + h.degree(); }
};

ZetaReciprocal ihara_Z(const Multigraph& x, bool parallel = false);

struct SpecialValues {
  BigInt h_at_1;
  BigInt dh_at_1;
  BigInt d2h_at_1;
  /// h'(1) / (-2 chi(X)); absent for chi(X) = 0.
  std::optional<BigInt> kappa_implied;
};

/// Throws std::logic_error when h'(1) is not divisible by -2 chi(X) or the
/// quotient is not positive.
SpecialValues special_values(const BigPoly& h, const Multigraph& x);

/// Coefficient list as decimal strings, ascending degree.
nlohmann::json poly_to_json(const BigPoly& p);
BigPoly poly_from_json(const nlohmann::json& j);

}  // namespace giwa
