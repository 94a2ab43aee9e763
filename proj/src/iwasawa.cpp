#include "giwa/iwasawa.hpp"

#include "giwa/zeta.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>
#include <thread>

namespace giwa {

void TowerSpec::validate() const {
  if (!is_prime(prime)) throw std::invalid_argument("l = " + std::to_string(prime) + " is not prime");
  if (generators.empty()) throw std::invalid_argument("at least one generator is required");
  const bool coprime = std::any_of(generators.begin(), generators.end(), [&](std::int64_t a) { return gcd(a, prime) == 1; });
  if (!coprime) throw std::invalid_argument("no generator is prime to l = " + std::to_string(prime));
}

std::vector<std::int64_t> TowerSpec::magnitudes() const {
  std::vector<std::int64_t> b;
  b.reserve(generators.size());
  for (auto a : generators) b.push_back(a < 0 ? -a : a);
  return b;
}

bool TowerSpec::has_zero_generator() const {
  return std::find(generators.begin(), generators.end(), 0) != generators.end();
}

BigPoly p_poly(std::int64_t a) {
  if (a < 0) throw std::invalid_argument("p_poly: a must be nonnegative");
  std::vector<BigPoly> p{BigPoly(), BigPoly::variable()};
  for (std::int64_t k = 2; k <= a; ++k) {
    BigPoly inner = BigPoly::constant(BigInt(static_cast<long>(k)) * static_cast<long>(k));
    for (std::int64_t j = 1; j < k; ++j) inner -= BigInt(static_cast<long>(k - j)) * p[static_cast<std::size_t>(j)];
    p.push_back(inner.shifted(1));
  }
  return p[static_cast<std::size_t>(std::min<std::int64_t>(a, static_cast<std::int64_t>(p.size()) - 1))];
}

BigPoly q_poly(const TowerSpec& spec) {
  BigPoly q;
  for (auto b : spec.magnitudes()) q += p_poly(b);
  return q;
}

MuLambda mu_lambda(const BigPoly& q, std::int64_t l) {
  if (q.is_zero()) throw std::invalid_argument("mu_lambda: Q is zero");
  if (q.coeff(0) != 0) throw std::invalid_argument("mu_lambda: Q has a nonzero constant term");
  MuLambda out;
  bool found = false;
  for (long j = 1; j <= q.degree(); ++j) {
    const BigInt& c = q.coeff(static_cast<std::size_t>(j));
    if (c == 0) continue;
    const long o = ord_p(c, static_cast<unsigned long>(l));
    if (!found || o < out.mu) {
      out.mu = o;
      out.j_star = j;
      found = true;
    }
  }
  out.lambda = 2 * out.j_star - 1;
  return out;
}

int stabilization_level(const BigPoly& q, std::int64_t l) {
  const MuLambda ml = mu_lambda(q, l);
  // Every competing term has ord(c_j) > mu (j < j*) or 2j > 2j* (j > j*), so
  // the scan terminates.
  BigInt phi(static_cast<long>(l - 1));
  for (int i = 1;; ++i) {
    bool ok = true;
    for (long j = 1; j <= q.degree() && ok; ++j) {
      const BigInt& c = q.coeff(static_cast<std::size_t>(j));
      if (c == 0 || j == ml.j_star) continue;
      const long o = ord_p(c, static_cast<unsigned long>(l));
      ok = phi * o + 2 * j > phi * ml.mu + 2 * ml.j_star;
    }
    if (ok) return i;
    phi *= static_cast<long>(l);
  }
}

BigInt level_norm(const TowerSpec& spec, int i, std::size_t budget_bits) {
  if (i < 1) throw std::invalid_argument("level_norm: i must be at least 1");
  const auto b = spec.magnitudes();
  const std::int64_t top = *std::max_element(b.begin(), b.end());
  std::vector<BigInt> f(static_cast<std::size_t>(2 * top + 1), BigInt(0));
  for (auto bj : b) {
    f[static_cast<std::size_t>(top)] += 2;
    f[static_cast<std::size_t>(top + bj)] -= 1;
    f[static_cast<std::size_t>(top - bj)] -= 1;
  }
  BigInt r = cyclotomic_resultant(spec.prime, i, BigPoly(std::move(f)), budget_bits);
  return abs(r);
}

Valuation level_valuation(const TowerSpec& spec, int i) {
  const BigPoly q = q_poly(spec);
  const CycElem eps = epsilon(spec.prime, i, 1);
  CycElem acc(spec.prime, i);
  for (long j = q.degree(); j >= 0; --j) {
    acc *= eps;
    acc += CycElem::constant(spec.prime, i, q.coeff(static_cast<std::size_t>(j)));
  }
  return ord_L(acc);
}

namespace {

void check_product_budget(const BigInt& x, std::size_t budget_bits) {
  if (bit_length(x) > budget_bits) {
    throw BudgetExceeded("kappa product exceeds the budget of " + std::to_string(budget_bits) + " bits");
  }
}

BigInt divide_by_prime_power(const BigInt& product, std::int64_t l, int n) {
  const BigInt divisor = ipow(BigInt(static_cast<long>(l)), static_cast<unsigned long>(n));
  if (!mpz_divisible_p(product.get_mpz_t(), divisor.get_mpz_t())) {
    throw std::logic_error("kappa_exact: product of level norms is not divisible by l^n");
  }
  BigInt out;
  mpz_divexact(out.get_mpz_t(), product.get_mpz_t(), divisor.get_mpz_t());
  return out;
}

/// v_1, .., v_n as plain integers; throws if one is infinite.
std::vector<long> valuations_up_to(const TowerSpec& spec, int n) {
  std::vector<long> v;
  for (int i = 1; i <= n; ++i) {
    const Valuation vi = level_valuation(spec, i);
    if (vi.is_infinite()) throw std::logic_error("Q(eps) vanishes at level " + std::to_string(i));
    v.push_back(vi.value());
  }
  return v;
}

}  // namespace

BigInt kappa_exact(const TowerSpec& spec, int n, std::size_t budget_bits) {
  spec.validate();
  if (n < 0) throw std::invalid_argument("kappa_exact: n must be nonnegative");
  if (spec.is_cycle_case()) return ipow(BigInt(static_cast<long>(spec.prime)), static_cast<unsigned long>(n));
  BigInt product = 1;
  for (int i = 1; i <= n; ++i) {
    const BigInt ni = level_norm(spec, i, budget_bits);
    if (ni == 0) throw std::logic_error("kappa_exact: N_" + std::to_string(i) + " vanishes");
    product *= ni;
    check_product_budget(product, budget_bits);
  }
  return divide_by_prime_power(product, spec.prime, n);
}

long ord_kappa(const TowerSpec& spec, int n) {
  if (n < 0) throw std::invalid_argument("ord_kappa: n must be nonnegative");
  long total = -n;
  for (long v : valuations_up_to(spec, n)) total += v;
  return total;
}

BigInt fitted_ord(const IwasawaInvariants& inv, std::int64_t l, int n) {
  return BigInt(inv.mu) * ipow(BigInt(static_cast<long>(l)), static_cast<unsigned long>(n)) + BigInt(inv.lambda) * n +
         BigInt(inv.nu);
}

IwasawaInvariants invariants(const TowerSpec& spec) {
  spec.validate();
  IwasawaInvariants inv;
  inv.zero_generator = spec.has_zero_generator();
  if (spec.is_cycle_case()) {
    // kappa_n = l^n g with g = 1.
    inv.cycle_case = true;
    inv.mu = 0;
    inv.lambda = 1;
    inv.nu = 0;
    return inv;
  }
  const BigPoly q = q_poly(spec);
  const MuLambda ml = mu_lambda(q, spec.prime);
  inv.mu = ml.mu;
  inv.lambda = ml.lambda;
  inv.n0_certified = stabilization_level(q, spec.prime);
  const std::vector<long> v = valuations_up_to(spec, inv.n0_certified);
  std::vector<long> ord(v.size() + 1, 0);
  for (std::size_t i = 1; i < ord.size(); ++i) ord[i] = ord[i - 1] + v[i - 1] - 1;
  const BigInt nu = BigInt(ord.back()) - fitted_ord(inv, spec.prime, inv.n0_certified);
  inv.nu = nu.get_si();
  inv.n0_observed = inv.n0_certified;
  while (inv.n0_observed > 1 && fitted_ord(inv, spec.prime, inv.n0_observed - 1) == ord[static_cast<std::size_t>(inv.n0_observed - 1)]) {
    --inv.n0_observed;
  }
  return inv;
}

BoundsReport verify_bounds(const TowerSpec& spec, int n_max, std::size_t budget_bits) {
  spec.validate();
  if (spec.is_cycle_case()) throw std::domain_error("verify_bounds: the upper bound needs chi(X) != 0");
  if (n_max < 0) throw std::invalid_argument("verify_bounds: n_max must be nonnegative");
  const std::int64_t q = spec.q();
  const long chi_abs = spec.t() - 1;
  const BigInt l(static_cast<long>(spec.prime));
  BoundsReport report;
  const IwasawaInvariants inv = invariants(spec);
  report.mu_bound = ipow(l, static_cast<unsigned long>(inv.mu)) <= BigInt(static_cast<long>(2 * (q + 1)));
  report.holds = report.mu_bound;
  std::vector<BigInt> kappa;
  for (int n = 0; n <= n_max; ++n) kappa.push_back(kappa_exact(spec, n, budget_bits));
  for (int n = 0; n <= n_max; ++n) {
    BoundsLevel level;
    level.n = n;
    const BigInt ln = ipow(l, static_cast<unsigned long>(n));
    const BigInt lhs = BigInt(4 * chi_abs) * (q + 1) * ln * kappa[static_cast<std::size_t>(n)];
    const BigInt rhs = BigInt(static_cast<long>(q - 1)) * ipow(BigInt(static_cast<long>(2 * (q + 1))), ln.get_ui());
    level.upper_bound = lhs <= rhs;
    level.ord_at_least_n = ord_p(kappa[static_cast<std::size_t>(n)], static_cast<unsigned long>(spec.prime)) >= n;
    level.divides_next = n == n_max || mpz_divisible_p(kappa[static_cast<std::size_t>(n + 1)].get_mpz_t(),
                                                       kappa[static_cast<std::size_t>(n)].get_mpz_t()) != 0;
    report.holds = report.holds && level.upper_bound && level.ord_at_least_n && level.divides_next;
    report.levels.push_back(level);
  }
  return report;
}

TowerReport build_report(const TowerSpec& spec, int n_max, const ReportOptions& options) {
  spec.validate();
  if (n_max < 0) throw std::invalid_argument("build_report: n_max must be nonnegative");
  TowerReport report;
  report.spec = spec;
  report.q = q_poly(spec);
  report.invariants = invariants(spec);
  const auto& inv = report.invariants;

  // Levels are independent; results land in fixed slots so the output does
  // not depend on scheduling.
  std::vector<BigInt> norms(static_cast<std::size_t>(n_max) + 1);
  std::vector<Valuation> vals(static_cast<std::size_t>(n_max) + 1, Valuation::finite(0));
  auto work = [&](int i) {
    norms[static_cast<std::size_t>(i)] = level_norm(spec, i, options.budget_bits);
    vals[static_cast<std::size_t>(i)] = level_valuation(spec, i);
  };
  if (options.parallel && n_max > 1) {
    const int workers = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    {
      std::vector<std::jthread> pool;
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (int i = n_max - w; i >= 1; i -= workers) work(i);
          } catch (...) {
            errors[static_cast<std::size_t>(w)] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (int i = 1; i <= n_max; ++i) work(i);
  }

  BigInt product = 1;
  long ord_sum = 0;
  const BigInt l(static_cast<long>(spec.prime));
  for (int n = 0; n <= n_max; ++n) {
    LevelRecord rec;
    rec.n = n;
    const std::string at = " at n = " + std::to_string(n);
    if (n > 0) {
      const BigInt& ni = norms[static_cast<std::size_t>(n)];
      const Valuation& vn = vals[static_cast<std::size_t>(n)];
      rec.norm = ni;
      rec.v = vn;
      product *= ni;
      check_product_budget(product, options.budget_bits);
      if (ni == 0 || vn.is_infinite()) {
        report.failures.push_back("vanishing level norm" + at);
      } else {
        if (ord_p(ni, static_cast<unsigned long>(spec.prime)) != vn.value()) {
          report.failures.push_back("ord_l(N_n) differs from v_n" + at);
        }
        ord_sum += vn.value() - 1;
      }
    }
    const BigInt ln = ipow(l, static_cast<unsigned long>(n));
    if (spec.is_cycle_case()) {
      rec.kappa = ln;
      if (ln * rec.kappa != product) report.failures.push_back("l^n kappa_n differs from the product of level norms" + at);
    } else if (product == 0 || !mpz_divisible_p(product.get_mpz_t(), ln.get_mpz_t())) {
      report.failures.push_back("product of level norms not divisible by l^n" + at);
    } else {
      mpz_divexact(rec.kappa.get_mpz_t(), product.get_mpz_t(), ln.get_mpz_t());
    }
    rec.ord = rec.kappa == 0 ? 0 : ord_p(rec.kappa, static_cast<unsigned long>(spec.prime));
    if (rec.ord != ord_sum) report.failures.push_back("ord_l(kappa_n) differs from -n + sum v_i" + at);
    rec.fit = fitted_ord(inv, spec.prime, n) == rec.ord;
    if (!rec.fit && n >= inv.n0_observed) report.failures.push_back("fit fails past n0" + at);
    report.levels.push_back(std::move(rec));
  }
  return report;
}

nlohmann::json to_json(const TowerReport& report) {
  const auto& inv = report.invariants;
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& rec : report.levels) {
    nlohmann::json row = {{"n", rec.n}, {"kappa", to_decimal(rec.kappa)}, {"ord_l_kappa", std::to_string(rec.ord)},
                          {"v", nullptr}, {"N", nullptr}, {"fit", rec.fit}};
    if (rec.v) row["v"] = rec.v->to_string();
    if (rec.norm) row["N"] = to_decimal(*rec.norm);
    levels.push_back(std::move(row));
  }
  return {
      {"l", report.spec.prime},
      {"generators", report.spec.generators},
      {"t", report.spec.t()},
      {"q", report.spec.q()},
      {"Q", poly_to_json(report.q)},
      {"invariants",
       {{"mu", std::to_string(inv.mu)},
        {"lambda", std::to_string(inv.lambda)},
        {"nu", std::to_string(inv.nu)},
        {"n0_certified", inv.n0_certified},
        {"n0_observed", inv.n0_observed},
        {"cycle_case", inv.cycle_case},
        {"zero_generator", inv.zero_generator}}},
      {"levels", levels},
      {"consistent", report.consistent()},
      {"failures", report.failures},
  };
}

TowerReport tower_report_from_json(const nlohmann::json& j) {
  try {
    TowerReport report;
    report.spec.prime = j.at("l").get<std::int64_t>();
    report.spec.generators = j.at("generators").get<std::vector<std::int64_t>>();
    report.q = poly_from_json(j.at("Q"));
    const auto& inv = j.at("invariants");
    report.invariants.mu = std::stol(inv.at("mu").get<std::string>());
    report.invariants.lambda = std::stol(inv.at("lambda").get<std::string>());
    report.invariants.nu = std::stol(inv.at("nu").get<std::string>());
    report.invariants.n0_certified = inv.at("n0_certified").get<int>();
    report.invariants.n0_observed = inv.at("n0_observed").get<int>();
    report.invariants.cycle_case = inv.at("cycle_case").get<bool>();
    report.invariants.zero_generator = inv.at("zero_generator").get<bool>();
    for (const auto& row : j.at("levels")) {
      LevelRecord rec;
      rec.n = row.at("n").get<int>();
      rec.kappa = parse_decimal(row.at("kappa").get<std::string>());
      rec.ord = std::stol(row.at("ord_l_kappa").get<std::string>());
      if (!row.at("v").is_null()) {
        const auto v = row.at("v").get<std::string>();
        rec.v = v == "inf" ? Valuation::infinity() : Valuation::finite(std::stol(v));
      }
      if (!row.at("N").is_null()) rec.norm = parse_decimal(row.at("N").get<std::string>());
      rec.fit = row.at("fit").get<bool>();
      report.levels.push_back(std::move(rec));
    }
    report.failures = j.at("failures").get<std::vector<std::string>>();
    return report;
  } catch (const nlohmann::json::exception& err) {
    throw std::invalid_argument(std::string("malformed tower report JSON: ") + err.what());
  } catch (const std::logic_error& err) {
    throw std::invalid_argument(std::string("malformed tower report JSON: ") + err.what());
  }
}

std::string to_csv(const TowerReport& report) {
  std::ostringstream out;
  out << "n,ord_l_kappa,fit\n";
  for (const auto& rec : report.levels) out << rec.n << ',' << rec.ord << ',' << (rec.fit ? "true" : "false") << '\n';
  return out.str();
}

std::string to_text(const TowerReport& report) {
  const auto& inv = report.invariants;
  std::ostringstream out;
  out << "l = " << report.spec.prime << ", a = (";
  for (std::size_t k = 0; k < report.spec.generators.size(); ++k) out << (k ? ", " : "") << report.spec.generators[k];
  out << "), t = " << report.spec.t() << ", q = " << report.spec.q() << '\n';
  out << "Q(T) = " << to_string(report.q, "T") << '\n';
  out << "mu = " << inv.mu << ", lambda = " << inv.lambda << ", nu = " << inv.nu << ", n0_certified = " << inv.n0_certified
      << ", n0_observed = " << inv.n0_observed << '\n';
  if (inv.cycle_case) out << "cycle case: every layer is a cycle, kappa_n = l^n\n";
  if (inv.zero_generator) out << "note: a zero generator adds loops only\n";
  out << '\n' << "n\tord\tv_n\tfit\tkappa_n\n";
  for (const auto& rec : report.levels) {
    out << rec.n << '\t' << rec.ord << '\t' << (rec.v ? rec.v->to_string() : "-") << '\t' << (rec.fit ? "yes" : "no") << '\t'
        << factored_form(rec.kappa) << '\n';
  }
  out << '\n' << (report.consistent() ? "all cross-checks passed" : "CROSS-CHECK FAILURES:") << '\n';
  for (const auto& f : report.failures) out << "  " << f << '\n';
  return out.str();
}

}  // namespace giwa
