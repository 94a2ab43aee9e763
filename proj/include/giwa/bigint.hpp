#pragma once

// Arbitrary-precision scalars (GMP) and their Eigen integration.

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <string_view>

namespace giwa {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// ord_p(x): the exponent of p in x. Throws std::domain_error for x == 0.
long ord_p(const BigInt& x, const BigInt& p);
long ord_p(const BigInt& x, unsigned long p);

BigInt ipow(const BigInt& base, unsigned long exponent);

std::string to_decimal(const BigInt& x);

/// Parses an optionally signed decimal integer. Throws std::invalid_argument.
BigInt parse_decimal(std::string_view text);

/// Number of bits in |x| (0 for x == 0).
std::size_t bit_length(const BigInt& x);

bool is_prime(std::int64_t n);

/// Non-negative residue of a modulo m (m > 0).
constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t gcd(std::int64_t a, std::int64_t b);

/// Euler's totient.
std::int64_t totient(std::int64_t n);

/// Renders |x| as a product of prime powers when trial division by primes up
/// to `trial_limit` finishes the factorization, e.g. "2^34 * 577^2". Returns
/// the plain decimal string otherwise.
std::string factored_form(const BigInt& x, std::uint32_t trial_limit = 1000000);

}  // namespace giwa

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpq_class;
  using Nested = mpz_class;
  using Literal = mpz_class;

  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
