#pragma once

// Abelian l-towers of Cayley-Serre multigraphs over a bouquet: the P_a and Q
// polynomials, exact spanning tree counts per layer, and the invariants
// (mu, lambda, nu, n0) of ord_l(kappa_n) = mu l^n + lambda n + nu.

#include "giwa/bigint.hpp"
#include "giwa/cyclotomic.hpp"
#include "giwa/polynomial.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace giwa {

/// Prime l and generators a_1, .., a_t; layer n is cayley_serre(l^n, a).
struct TowerSpec {
  std::int64_t prime = 2;
  std::vector<std::int64_t> generators;

  /// Throws std::invalid_argument for composite l, no generators, or no
  /// generator prime to l.
  void validate() const;

  int t() const { return static_cast<int>(generators.size()); }
  /// q = 2t - 1, so every layer is (q + 1)-regular.
  std::int64_t q() const { return 2 * static_cast<std::int64_t>(generators.size()) - 1; }
  /// b_j = |a_j|.
  std::vector<std::int64_t> magnitudes() const;
  bool has_zero_generator() const;
  /// t = 1: every layer is a cycle.
  bool is_cycle_case() const { return generators.size() == 1; }
};

/// P_0 = 0, P_1 = T, P_a = T (a^2 - sum_{k<a} (a - k) P_k).
BigPoly p_poly(std::int64_t a);

/// Q = sum_j P_{b_j}.
BigPoly q_poly(const TowerSpec& spec);

struct MuLambda {
  long mu = 0;
  long lambda = 0;
  /// Smallest index j with ord_l(c_j) = mu; lambda = 2 j* - 1.
  long j_star = 0;
};

/// Throws std::invalid_argument for Q = 0 or a nonzero constant term.
MuLambda mu_lambda(const BigPoly& q, std::int64_t l);

/// Smallest i with phi(l^i) ord(c_j) + 2j > phi(l^i) mu + 2 j* for all
/// nonzero c_j, j != j*. From there on v_i = mu phi(l^i) + lambda + 1.
int stabilization_level(const BigPoly& q, std::int64_t l);

/// N_i = |Res_y(Phi_{l^i}, y^B sum_j (2 - y^{b_j} - y^{-b_j}))| = h_X(1, Psi_i).
BigInt level_norm(const TowerSpec& spec, int i, std::size_t budget_bits = kDefaultBudgetBits);

/// v_i = ord_L(Q(eps_{l^i}(1))), evaluated in Z[zeta_{l^i}].
Valuation level_valuation(const TowerSpec& spec, int i);

/// kappa_n = (prod_{i<=n} N_i) / l^n, with the exact division checked.
/// The cycle case returns l^n directly.
BigInt kappa_exact(const TowerSpec& spec, int n, std::size_t budget_bits = kDefaultBudgetBits);

/// -n + sum_{i<=n} v_i.
long ord_kappa(const TowerSpec& spec, int n);

struct IwasawaInvariants {
  long mu = 0;
  long lambda = 0;
  long nu = 0;
  int n0_certified = 1;
  int n0_observed = 1;
  bool cycle_case = false;
  bool zero_generator = false;
};

/// mu l^n + lambda n + nu.
BigInt fitted_ord(const IwasawaInvariants& inv, std::int64_t l, int n);

IwasawaInvariants invariants(const TowerSpec& spec);

struct BoundsLevel {
  int n = 0;
  bool upper_bound = false;  // 4|chi|(q+1) l^n kappa_n <= (q-1) (2(q+1))^(l^n)
  bool ord_at_least_n = false;
  bool divides_next = false;  // kappa_n | kappa_{n+1}; true at n = n_max
};

struct BoundsReport {
  bool holds = false;
  bool mu_bound = false;  // l^mu <= 2(q+1)
  std::vector<BoundsLevel> levels;
};

/// Levels 0..n_max. Requires t >= 2.
BoundsReport verify_bounds(const TowerSpec& spec, int n_max, std::size_t budget_bits = kDefaultBudgetBits);

struct LevelRecord {
  int n = 0;
  BigInt kappa;
  long ord = 0;                   // ord_l(kappa_n)
  std::optional<Valuation> v;     // v_n, absent at n = 0
  std::optional<BigInt> norm;     // N_n, absent at n = 0
  bool fit = false;               // ord = mu l^n + lambda n + nu
};

struct TowerReport {
  TowerSpec spec;
  BigPoly q;
  IwasawaInvariants invariants;
  std::vector<LevelRecord> levels;
  /// Internal consistency failures; empty when every cross-check passed.
  std::vector<std::string> failures;

  bool consistent() const { return failures.empty(); }
};

struct ReportOptions {
  bool parallel = false;
  std::size_t budget_bits = kDefaultBudgetBits;
};

/// Levels 0..n_max with per-level cross-checks: l^n kappa_n = prod N_i,
/// ord_l(N_n) = v_n, ord_l(kappa_n) = ord_kappa, and the fit for n >= n0.
TowerReport build_report(const TowerSpec& spec, int n_max, const ReportOptions& options = {});

nlohmann::json to_json(const TowerReport& report);
/// Inverse of to_json; throws std::invalid_argument on schema mismatch.
TowerReport tower_report_from_json(const nlohmann::json& j);
/// Header "n,ord_l_kappa,fit".
std::string to_csv(const TowerReport& report);
std::string to_text(const TowerReport& report);

}  // namespace giwa
