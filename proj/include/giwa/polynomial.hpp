#pragma once

// Dense univariate polynomials over an exact scalar ring.

#include "giwa/bigint.hpp"
#include "giwa/matrix.hpp"

#include <functional>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace giwa {

/// Coefficients are stored by ascending degree with trailing zeros trimmed,
/// so the zero polynomial has no coefficients.
template <typename Scalar>
class Polynomial {
 public:
  /// Degree reported for the zero polynomial.
  static constexpr long kZeroDegree = std::numeric_limits<long>::min();

  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coefficients) : coeffs_(std::move(coefficients)) { trim(); }
  Polynomial(std::initializer_list<Scalar> coefficients) : coeffs_(coefficients) { trim(); }

  static Polynomial constant(Scalar c) { return Polynomial(std::vector<Scalar>{std::move(c)}); }
  static Polynomial monomial(Scalar c, std::size_t degree) {
    std::vector<Scalar> v(degree + 1, Scalar(0));
    v[degree] = std::move(c);
    return Polynomial(std::move(v));
  }
  static Polynomial variable() { return monomial(Scalar(1), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return coeffs_.empty() ? kZeroDegree : static_cast<long>(coeffs_.size()) - 1; }
  std::size_t size() const { return coeffs_.size(); }

  /// Coefficient of u^k (zero beyond the degree).
  Scalar coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Scalar(0); }
  const Scalar& leading() const {
    if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }

  template <typename Point>
  Point evaluate(const Point& x) const {
    Point acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc *= x;
      acc += Point(*it);
    }
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Scalar> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * Scalar(static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  Polynomial& operator+=(const Polynomial& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Scalar(0));
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Scalar(0));
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Scalar& c) {
    if (c == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& a : coeffs_) a *= c;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> r(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(r));
  }
  Polynomial& operator*=(const Polynomial& other) { return *this = *this * other; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Multiplies by u^k.
  Polynomial shifted(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<Scalar> v(k, Scalar(0));
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Polynomial(std::move(v));
  }

  /// Divides every coefficient by `c`; the caller guarantees exactness.
  Polynomial exact_div(const Scalar& c) const {
    std::vector<Scalar> v = coeffs_;
    for (auto& a : v) a /= c;
    return Polynomial(std::move(v));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Scalar> coeffs_;
};

using BigPoly = Polynomial<BigInt>;
using RationalPoly = Polynomial<BigRational>;

BigPoly pow(const BigPoly& p, unsigned long exponent);

/// gcd of the coefficients, sign matching the leading coefficient.
BigInt content(const BigPoly& p);

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
BigPoly pseudo_remainder(const BigPoly& a, const BigPoly& b);

/// Quotient and remainder over the rationals.
std::pair<RationalPoly, RationalPoly> divide(const RationalPoly& a, const RationalPoly& b);
RationalPoly remainder(const RationalPoly& a, const RationalPoly& b);

RationalPoly to_rational(const BigPoly& p);

/// Clears denominators: returns (L, L*p) with L the positive lcm of the
/// denominators, so that L*p has integer coefficients.
std::pair<BigInt, BigPoly> clear_denominators(const RationalPoly& p);

/// Res(a, b) by the subresultant polynomial remainder sequence.
BigInt resultant(const BigPoly& a, const BigPoly& b);

/// Res(a, b) as the determinant of the Sylvester matrix (Bareiss).
BigInt resultant_sylvester(const BigPoly& a, const BigPoly& b);

BigMatrix sylvester_matrix(const BigPoly& a, const BigPoly& b);

/// Integer evaluation points 0, 1, -1, 2, -2, ... (count of them).
std::vector<BigInt> interpolation_points(std::size_t count);

/// The unique polynomial of degree < xs.size() through (xs[k], ys[k]), by
/// Newton divided differences over the rationals. Throws std::domain_error
/// when the interpolant does not have integer coefficients.
BigPoly interpolate(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys);

/// Determinant of a polynomial matrix of known degree bound, by evaluating
/// `matrix_at` at degree_bound + 1 integer points, taking Bareiss
/// determinants, and interpolating. `parallel` spreads the evaluations
/// over hardware threads; the result does not depend on it.
BigPoly determinant_polynomial(const std::function<BigMatrix(const BigInt&)>& matrix_at,
                               std::size_t degree_bound, bool parallel = false);

/// Human-readable form, e.g. "1 - 4u + 3u^2".
std::string to_string(const BigPoly& p, const std::string& variable = "u");

}  // namespace giwa
