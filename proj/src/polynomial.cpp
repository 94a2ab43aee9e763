#include "giwa/polynomial.hpp"

#include <algorithm>
#include <thread>

namespace giwa {

BigPoly pow(const BigPoly& p, unsigned long exponent) {
  BigPoly result = BigPoly::constant(1);
  BigPoly base = p;
  while (exponent > 0) {
    if (exponent & 1UL) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

BigInt content(const BigPoly& p) {
  BigInt g = 0;
  for (const auto& c : p.coefficients()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  if (!p.is_zero() && p.leading() < 0) g = -g;
  return g;
}

BigPoly pseudo_remainder(const BigPoly& a, const BigPoly& b) {
  if (b.is_zero()) throw std::domain_error("pseudo_remainder: division by zero polynomial");
  if (a.degree() < b.degree()) return a;
  std::vector<BigInt> r = a.coefficients();
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  const BigInt& lb = bc.back();
  // One multiplication by lb per step, deg a - deg b + 1 steps in total.
  for (std::size_t top = r.size() - 1;; --top) {
    const BigInt lead = r[top];
    for (auto& c : r) c *= lb;
    if (lead != 0) {
      const std::size_t shift = top - db;
      for (std::size_t k = 0; k <= db; ++k) r[shift + k] -= lead * bc[k];
    }
    if (top == db) break;
  }
  return BigPoly(std::move(r));
}

std::pair<RationalPoly, RationalPoly> divide(const RationalPoly& a, const RationalPoly& b) {
  if (b.is_zero()) throw std::domain_error("divide: division by zero polynomial");
  if (a.degree() < b.degree()) return {RationalPoly{}, a};
  std::vector<BigRational> r = a.coefficients();
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  std::vector<BigRational> q(r.size() - db, BigRational(0));
  for (std::size_t top = r.size() - 1;; --top) {
    if (r[top] != 0) {
      const BigRational factor = r[top] / bc.back();
      const std::size_t shift = top - db;
      q[shift] = factor;
      for (std::size_t k = 0; k <= db; ++k) r[shift + k] -= factor * bc[k];
    }
    if (top == db) break;
  }
  r.resize(db);
  return {RationalPoly(std::move(q)), RationalPoly(std::move(r))};
}

RationalPoly remainder(const RationalPoly& a, const RationalPoly& b) { return divide(a, b).second; }

RationalPoly to_rational(const BigPoly& p) {
  std::vector<BigRational> v;
  v.reserve(p.size());
  for (const auto& c : p.coefficients()) v.emplace_back(c);
  return RationalPoly(std::move(v));
}

std::pair<BigInt, BigPoly> clear_denominators(const RationalPoly& p) {
  BigInt l = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<BigInt> v;
  v.reserve(p.size());
  for (const auto& c : p.coefficients()) v.emplace_back(c.get_num() * (l / c.get_den()));
  return {l, BigPoly(std::move(v))};
}

BigInt resultant(const BigPoly& a_in, const BigPoly& b_in) {
  if (a_in.is_zero() || b_in.is_zero()) return 0;
  const long da0 = a_in.degree();
  const long db0 = b_in.degree();
  if (da0 == 0) return ipow(a_in.leading(), static_cast<unsigned long>(db0));
  if (db0 == 0) return ipow(b_in.leading(), static_cast<unsigned long>(da0));

  BigInt ca = abs(content(a_in));
  BigInt cb = abs(content(b_in));
  BigPoly a = a_in.exact_div(ca);
  BigPoly b = b_in.exact_div(cb);
  const BigInt t = ipow(ca, db0) * ipow(cb, da0);

  int sign = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((da0 & 1) && (db0 & 1)) sign = -sign;
  }

  BigInt g = 1;
  BigInt h = 1;
  for (;;) {
    const long delta = a.degree() - b.degree();
    if ((a.degree() & 1) && (b.degree() & 1)) sign = -sign;
    BigPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    if (r.is_zero()) return 0;
    b = r.exact_div(g * ipow(h, static_cast<unsigned long>(delta)));
    g = a.leading();
    // h <- g^delta / h^(delta - 1)
    if (delta > 0) {
      BigInt num = ipow(g, static_cast<unsigned long>(delta));
      BigInt den = ipow(h, static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (b.degree() == 0) break;
  }
  const long da = a.degree();
  BigInt num = ipow(b.leading(), static_cast<unsigned long>(da));
  BigInt den = ipow(h, static_cast<unsigned long>(da - 1));
  BigInt last;
  mpz_divexact(last.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  BigInt res = t * last;
  return sign < 0 ? BigInt(-res) : res;
}

BigMatrix sylvester_matrix(const BigPoly& a, const BigPoly& b) {
  const long m = a.degree();
  const long n = b.degree();
  if (m < 0 || n < 0) throw std::domain_error("sylvester_matrix: zero polynomial");
  const Index size = m + n;
  BigMatrix s = BigMatrix::Zero(size, size);
  for (long r = 0; r < n; ++r)
    for (long k = 0; k <= m; ++k) s(r, r + k) = a.coeff(static_cast<std::size_t>(m - k));
  for (long r = 0; r < m; ++r)
    for (long k = 0; k <= n; ++k) s(n + r, r + k) = b.coeff(static_cast<std::size_t>(n - k));
  return s;
}

BigInt resultant_sylvester(const BigPoly& a, const BigPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  return bareiss_determinant(sylvester_matrix(a, b));
}

std::vector<BigInt> interpolation_points(std::size_t count) {
  std::vector<BigInt> xs;
  xs.reserve(count);
  for (std::size_t k = 0; xs.size() < count; ++k) {
    if (k == 0) {
      xs.emplace_back(0);
      continue;
    }
    xs.emplace_back(static_cast<long>(k));
    if (xs.size() < count) xs.emplace_back(-static_cast<long>(k));
  }
  return xs;
}

BigPoly interpolate(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
  const std::size_t n = xs.size();
  if (n == 0) return {};

  std::vector<BigRational> dd(ys.begin(), ys.end());
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t k = n - 1; k >= level; --k) {
      dd[k] = (dd[k] - dd[k - 1]) / BigRational(xs[k] - xs[k - level]);
      if (k == level) break;
    }
  }

  // Horner on the Newton form.
  std::vector<BigRational> poly{dd[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    std::vector<BigRational> next(poly.size() + 1, BigRational(0));
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] -= poly[j] * BigRational(xs[k]);
    }
    next[0] += dd[k];
    poly = std::move(next);
  }

  std::vector<BigInt> out;
  out.reserve(poly.size());
  for (auto& c : poly) {
    c.canonicalize();
    if (c.get_den() != 1) throw std::domain_error("interpolate: interpolant has non-integer coefficients");
    out.push_back(c.get_num());
  }
  return BigPoly(std::move(out));
}

BigPoly determinant_polynomial(const std::function<BigMatrix(const BigInt&)>& matrix_at,
                               std::size_t degree_bound, bool parallel) {
  const std::vector<BigInt> xs = interpolation_points(degree_bound + 1);
  std::vector<BigInt> ys(xs.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t k = begin; k < xs.size(); k += stride) ys[k] = bareiss_determinant(matrix_at(xs[k]));
  };
  const std::size_t threads = parallel ? std::max(1U, std::thread::hardware_concurrency()) : 1;
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }
  return interpolate(xs, ys);
}

std::string to_string(const BigPoly& p, const std::string& variable) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const BigInt& c = p.coefficients()[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const BigInt magnitude = abs(c);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (k == 0 || magnitude != 1) out += to_decimal(magnitude);
    if (k >= 1) out += variable;
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

}  // namespace giwa
