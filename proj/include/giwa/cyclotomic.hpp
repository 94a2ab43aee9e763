#pragma once

// Exact arithmetic in Z[zeta_{l^i}] = Z[y] / Phi_{l^i}(y), norms to Q and the
// valuation at the unique prime above l.

#include "giwa/bigint.hpp"
#include "giwa/polynomial.hpp"

#include <nlohmann/json_fwd.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace giwa {

/// A valuation: a non-negative integer or infinity (only for zero).
class Valuation {
 public:
  static Valuation finite(long v) { return Valuation(v, false); }
  static Valuation infinity() { return Valuation(0, true); }

  bool is_infinite() const { return infinite_; }
  long value() const {
    if (infinite_) throw std::domain_error("Valuation::value on infinity");
    return value_;
  }

  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return finite(a.value_ + b.value_);
  }
  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

 private:
  Valuation(long v, bool inf) : value_(v), infinite_(inf) {}
  long value_ = 0;
  bool infinite_ = false;
};

Valuation min(const Valuation& a, const Valuation& b);

/// Thrown when an intermediate integer would exceed the bit budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultBudgetBits = std::size_t{1} << 26;

/// Phi_d for any d >= 1.
BigPoly cyclotomic_polynomial(std::int64_t d);

/// Phi_{l^i}(y) = sum_{j<l} y^(j l^(i-1)). Rejects composite l and i < 1.
BigPoly phi_poly(std::int64_t l, int i);

/// Element of Z[y] / Phi_{l^i}(y) in canonical form: exactly phi(l^i)
/// coefficients, ascending powers of y.
class CycElem {
 public:
  CycElem(std::int64_t l, int level);

  /// Reduces any coefficient list (read as a polynomial in y).
  static CycElem from_coefficients(std::int64_t l, int level, const std::vector<BigInt>& coefficients);
  /// sum c_k y^(e_k); exponents may be negative (read modulo l^i).
  static CycElem from_terms(std::int64_t l, int level, const std::vector<std::pair<std::int64_t, BigInt>>& terms);
  static CycElem constant(std::int64_t l, int level, const BigInt& c);
  /// zeta^k.
  static CycElem root_power(std::int64_t l, int level, std::int64_t k);

  std::int64_t prime() const { return prime_; }
  int level() const { return level_; }
  std::int64_t modulus() const { return modulus_; }
  std::size_t dimension() const { return coeffs_.size(); }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  bool is_zero() const;
  BigPoly representative() const { return BigPoly(coeffs_); }

  /// The image under zeta -> zeta^k, k prime to l.
  CycElem conjugate(std::int64_t k) const;

  CycElem& operator+=(const CycElem& other);
  CycElem& operator-=(const CycElem& other);
  CycElem& operator*=(const CycElem& other);
  friend CycElem operator+(CycElem a, const CycElem& b) { return a += b; }
  friend CycElem operator-(CycElem a, const CycElem& b) { return a -= b; }
  friend CycElem operator*(const CycElem& a, const CycElem& b) {
    CycElem r = a;
    r *= b;
    return r;
  }
  friend CycElem operator-(CycElem a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend CycElem operator*(const BigInt& c, CycElem a) {
    for (auto& x : a.coeffs_) x *= c;
    return a;
  }
  friend bool operator==(const CycElem& a, const CycElem& b) = default;

 private:
  void check_compatible(const CycElem& other) const;
  /// Folds a length-modulus cyclic coefficient array into canonical form.
  void reduce_from_cyclic(std::vector<BigInt>& cyclic);

  std::int64_t prime_;
  int level_;
  std::int64_t modulus_;
  std::vector<BigInt> coeffs_;
};

CycElem pow(const CycElem& x, unsigned long exponent);

/// eps_{l^i}(a) = (1 - zeta^a)(1 - zeta^-a) = 2 - zeta^a - zeta^-a.
CycElem epsilon(std::int64_t l, int level, std::int64_t a);

/// Field norm to Q, by descending the tower of relative norms
/// Q(zeta_{l^i}) / Q(zeta_{l^(i-1)}) / ... / Q.
BigInt norm(const CycElem& x);

/// Field norm as Res(Phi_{l^i}, representative).
BigInt norm_by_resultant(const CycElem& x, std::size_t budget_bits = kDefaultBudgetBits);

/// Res_y(Phi_{l^i}(y), f(y)) for any integer polynomial f. Phi is never
/// expanded: y^(l^(i-1)) is reduced modulo f by repeated squaring, and the
/// remaining resultant has degree at most deg f. Throws BudgetExceeded.
BigInt cyclotomic_resultant(std::int64_t l, int level, const BigPoly& f,
                            std::size_t budget_bits = kDefaultBudgetBits);

/// ord at the prime (1 - zeta_{l^i}) as ord_l |norm x|; the prime is totally
/// ramified with residue degree one.
Valuation ord_L(const CycElem& x);

/// {"l": l, "i": i, "coeffs": ["..", ..]}
nlohmann::json to_json(const CycElem& x);
CycElem cyc_elem_from_json(const nlohmann::json& j);

}  // namespace giwa
