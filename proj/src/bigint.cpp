#include "giwa/bigint.hpp"

#include <stdexcept>
#include <vector>

namespace giwa {

long ord_p(const BigInt& x, const BigInt& p) {
  if (x == 0) throw std::domain_error("ord_p: valuation of zero is infinite");
  if (p < 2) throw std::invalid_argument("ord_p: base must be at least 2");
  BigInt y = abs(x);
  long count = 0;
  // mpz_remove strips every factor of p at once.
  count = static_cast<long>(mpz_remove(y.get_mpz_t(), y.get_mpz_t(), p.get_mpz_t()));
  return count;
}

long ord_p(const BigInt& x, unsigned long p) { return ord_p(x, BigInt(p)); }

BigInt ipow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

std::string to_decimal(const BigInt& x) { return x.get_str(10); }

BigInt parse_decimal(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("malformed integer literal: " + s);
  for (std::size_t k = start; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("malformed integer literal: " + s);
  }
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

std::size_t bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t totient(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("totient: argument must be positive");
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::string factored_form(const BigInt& x, std::uint32_t trial_limit) {
  if (x == 0) return "0";
  BigInt rest = abs(x);
  std::vector<std::pair<std::uint32_t, unsigned long>> factors;
  std::vector<bool> composite(trial_limit + 1, false);
  bool complete = false;
  for (std::uint32_t p = 2; p <= trial_limit; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t k = std::uint64_t(p) * p; k <= trial_limit; k += p) composite[k] = true;
    if (BigInt(p) * p > rest) {
      complete = true;  // rest is 1 or prime
      break;
    }
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
      const BigInt bp(p);
      const auto e = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), bp.get_mpz_t());
      factors.emplace_back(p, e);
    }
  }
  if (!complete) {
    const BigInt bound = BigInt(trial_limit + 1) * BigInt(trial_limit + 1);
    if (rest >= bound) return to_decimal(x);
  }

  std::string out = x < 0 ? "-" : "";
  bool first = true;
  for (const auto& [p, e] : factors) {
    if (!first) out += " * ";
    first = false;
    out += std::to_string(p);
    if (e > 1) out += "^" + std::to_string(e);
  }
  if (rest > 1 || first) {
    if (!first) out += " * ";
    out += to_decimal(rest);
  }
  return out;
}

}  // namespace giwa
