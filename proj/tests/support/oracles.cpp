#include "oracles.hpp"

#include "giwa/zeta.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace giwa::testing {

BigInt leibniz_determinant(const BigMatrix& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  if (n > 8) throw std::invalid_argument("leibniz_determinant: too large");
  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  BigInt total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    BigInt term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(static_cast<Index>(i), perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

BigPoly laplace_determinant(const std::vector<std::vector<BigPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return BigPoly::constant(1);
  if (n == 1) return m[0][0];
  BigPoly total;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<BigPoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BigPoly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    BigPoly term = m[0][col] * laplace_determinant(minor);
    if (col % 2) {
      total -= term;
    } else {
      total += term;
    }
  }
  return total;
}

BigInt brute_force_spanning_trees(const Multigraph& x) {
  const auto g = static_cast<std::size_t>(x.vertex_count());
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (const auto& e : x.directed_edges())
    if (e.id < e.inverse && e.origin != e.terminus) edges.emplace_back(e.origin, e.terminus);
  if (edges.size() > 24) throw std::invalid_argument("brute_force_spanning_trees: too many edges");
  const std::size_t need = g - 1;
  BigInt count = 0;
  for (std::uint32_t mask = 0; mask < (1U << edges.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != need) continue;
    std::vector<std::size_t> parent(g);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    bool acyclic = true;
    for (std::size_t k = 0; k < edges.size() && acyclic; ++k) {
      if (!(mask & (1U << k))) continue;
      const auto a = find(static_cast<std::size_t>(edges[k].first));
      const auto b = find(static_cast<std::size_t>(edges[k].second));
      if (a == b) {
        acyclic = false;
      } else {
        parent[a] = b;
      }
    }
    if (acyclic) count += 1;
  }
  return count;
}

BigPoly characteristic_polynomial(const BigMatrix& a) {
  // M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  const Index n = a.rows();
  std::vector<BigInt> c(static_cast<std::size_t>(n) + 1, BigInt(0));
  c[static_cast<std::size_t>(n)] = 1;
  BigMatrix m = BigMatrix::Zero(n, n);
  for (Index k = 1; k <= n; ++k) {
    BigMatrix next = a * m;
    for (Index i = 0; i < n; ++i) next(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    m = next;
    BigMatrix am = a * m;
    BigInt trace = 0;
    for (Index i = 0; i < n; ++i) trace += am(i, i);
    if (trace % k != 0) throw std::logic_error("characteristic_polynomial: inexact trace division");
    c[static_cast<std::size_t>(n - k)] = -trace / k;
  }
  return BigPoly(std::move(c));
}

namespace {

/// Gaussian elimination over Q with first-nonzero pivoting.
BigRational rational_determinant(std::vector<std::vector<BigRational>> m) {
  const std::size_t n = m.size();
  BigRational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      const BigRational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

/// Lagrange form, expanded term by term over Q.
BigPoly lagrange_interpolate(const std::vector<BigInt>& xs, const std::vector<BigRational>& ys) {
  const std::size_t n = xs.size();
  std::vector<BigRational> acc(n, BigRational(0));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<BigRational> basis{BigRational(1)};
    BigRational denom = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<BigRational> next(basis.size() + 1, BigRational(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * BigRational(xs[j]);
      }
      basis = std::move(next);
      denom *= BigRational(xs[i] - xs[j]);
    }
    for (std::size_t k = 0; k < basis.size() && k < n; ++k) acc[k] += ys[i] * basis[k] / denom;
  }
  std::vector<BigInt> out;
  for (auto& c : acc) {
    c.canonicalize();
    if (c.get_den() != 1) throw std::logic_error("lagrange_interpolate: non-integral coefficient");
    out.push_back(c.get_num());
  }
  return BigPoly(std::move(out));
}

}  // namespace

BigPoly regular_h_from_spectrum(const BigMatrix& a, long q) {
  const BigPoly chi = characteristic_polynomial(a);
  const auto g = static_cast<std::size_t>(a.rows());
  std::vector<BigInt> xs;
  std::vector<BigRational> ys;
  for (std::size_t k = 0; k <= 2 * g; ++k) {
    const BigInt u(static_cast<long>(k));
    // Res(chi, L) = prod L(lambda_i) since chi is monic.
    const BigPoly linear{BigInt(1 + q * u * u), BigInt(-u)};
    xs.push_back(u);
    ys.emplace_back(resultant_sylvester(chi, linear));
  }
  return lagrange_interpolate(xs, ys);
}

BigPoly kronecker_orbit_polynomial(const VoltageGraph& vg, std::int64_t d) {
  const BigPoly phi = cyclotomic_polynomial(d);
  const auto f = static_cast<Index>(phi.degree());
  const Index g = vg.base().vertex_count();
  // Companion matrix of the monic Phi_d: C e_k = e_{k+1}, C e_{f-1} = -sum c_k e_k.
  BigMatrix companion = BigMatrix::Zero(f, f);
  for (Index k = 0; k + 1 < f; ++k) companion(k + 1, k) = 1;
  for (Index k = 0; k < f; ++k) companion(k, f - 1) = -phi.coeff(static_cast<std::size_t>(k));
  std::vector<BigMatrix> powers{BigMatrix::Identity(f, f)};
  for (std::int64_t s = 1; s < vg.modulus(); ++s) powers.push_back(powers.back() * companion);

  const Index n = g * f;
  BigMatrix a_tilde = BigMatrix::Zero(n, n);
  for (std::int64_t s = 0; s < vg.modulus(); ++s) {
    const BigMatrix a_sigma = artin_A_sigma(vg, s);
    for (Index i = 0; i < g; ++i)
      for (Index j = 0; j < g; ++j)
        if (a_sigma(i, j) != 0) a_tilde.block(i * f, j * f, f, f) += a_sigma(i, j) * powers[static_cast<std::size_t>(s)];
  }
  std::vector<BigInt> xs;
  std::vector<BigRational> ys;
  for (Index k = 0; k <= 2 * n; ++k) {
    const BigInt u(static_cast<long>(k) - static_cast<long>(n));
    std::vector<std::vector<BigRational>> m(static_cast<std::size_t>(n), std::vector<BigRational>(static_cast<std::size_t>(n)));
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        BigInt v = -a_tilde(i, j) * u;
        if (i == j) v += 1 + (BigInt(vg.base().valency(i / f)) - 1) * u * u;
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = BigRational(v);
      }
    }
    xs.push_back(u);
    ys.push_back(rational_determinant(std::move(m)));
  }
  return lagrange_interpolate(xs, ys);
}

BigInt conjugate_product_norm(const CycElem& x) {
  CycElem product = CycElem::constant(x.prime(), x.level(), 1);
  for (std::int64_t k = 1; k < x.modulus(); ++k)
    if (k % x.prime() != 0) product *= x.conjugate(k);
  const auto& c = product.coefficients();
  for (std::size_t k = 1; k < c.size(); ++k)
    if (c[k] != 0) throw std::logic_error("conjugate_product_norm: product is not rational");
  return c.front();
}

VoltageGraph random_voltage_graph(std::mt19937_64& rng) {
  auto uniform = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  for (;;) {
    const std::int64_t g = uniform(1, 4);
    const std::int64_t e_count = uniform(g + 1, 10);
    Multigraph base(g);
    for (std::int64_t v = 1; v < g; ++v) base.add_edge(uniform(0, v - 1), v);
    while (static_cast<std::int64_t>(base.undirected_edge_count()) < e_count) base.add_edge(uniform(0, g - 1), uniform(0, g - 1));
    if (!validate_serre(base).empty()) continue;
    const std::int64_t m = uniform(1, 12);
    for (int attempt = 0; attempt < 20; ++attempt) {
      std::vector<std::int64_t> voltages;
      for (std::size_t k = 0; k < base.undirected_edge_count(); ++k) {
        const std::int64_t s = uniform(0, m - 1);
        voltages.push_back(s);
        voltages.push_back(mod_floor(-s, m));
      }
      if (cycle_voltage_gcd(base, m, voltages) == 1) return VoltageGraph::create(base, m, voltages);
    }
  }
}

CycElem random_cyc_elem(std::mt19937_64& rng, std::int64_t l, int level, int max_coeff) {
  const CycElem zero(l, level);
  const int terms = std::uniform_int_distribution<int>(1, 6)(rng);
  std::vector<std::pair<std::int64_t, BigInt>> t;
  for (int k = 0; k < terms; ++k) {
    t.emplace_back(std::uniform_int_distribution<std::int64_t>(0, zero.modulus() - 1)(rng),
                   BigInt(std::uniform_int_distribution<long>(-max_coeff, max_coeff)(rng)));
  }
  return CycElem::from_terms(l, level, t);
}

std::vector<TowerSpec> tower_corpus() {
  return {
      {2, {1, 1}},          {2, {3, 5}},       {2, {1, 2}},         {2, {-3, 7}},       {2, {2, 3, 25}},
      {2, {1, 1, 1, 1}},    {2, {5, -9, 12, 25}}, {2, {0, 1}},      {2, {1, 4, 20}},    {3, {1, 4, 20}},
      {3, {1, 1}},          {3, {2, 3}},       {3, {1, 3, 9}},      {3, {5, -7, 11, 25}}, {3, {1, 0, 3}},
      {3, {-1, 2, 2, 6}},   {5, {1, 2}},       {5, {1, 5}},         {5, {3, 4, 10}},    {5, {1, 7, -13, 25}},
      {5, {2, 2}},          {5, {1, 1, 1}},
  };
}

std::vector<std::pair<std::string, Multigraph>> graph_corpus() {
  std::vector<std::pair<std::string, Multigraph>> out;
  for (int t = 1; t <= 4; ++t) out.emplace_back("bouquet B" + std::to_string(t), bouquet(t));
  for (VertexId g = 1; g <= 8; ++g) out.emplace_back("cycle C" + std::to_string(g), cycle_graph(g));
  {
    Multigraph theta(2);
    for (int k = 0; k < 3; ++k) theta.add_edge(0, 1);
    out.emplace_back("theta", theta);
  }
  {
    Multigraph k4(4);
    for (VertexId i = 0; i < 4; ++i)
      for (VertexId j = i + 1; j < 4; ++j) k4.add_edge(i, j);
    out.emplace_back("K4", k4);
  }
  {
    Multigraph k33(6);
    for (VertexId i = 0; i < 3; ++i)
      for (VertexId j = 3; j < 6; ++j) k33.add_edge(i, j);
    out.emplace_back("K33", k33);
  }
  {
    Multigraph petersen(10);
    for (VertexId i = 0; i < 5; ++i) {
      petersen.add_edge(i, (i + 1) % 5);
      petersen.add_edge(i, i + 5);
      petersen.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    out.emplace_back("Petersen", petersen);
  }
  {
    Multigraph dumbbell(2);
    dumbbell.add_loop(0);
    dumbbell.add_loop(1);
    dumbbell.add_edge(0, 1);
    out.emplace_back("dumbbell", dumbbell);
  }
  {
    Multigraph x(3);
    x.add_edge(0, 1);
    x.add_edge(1, 2);
    x.add_edge(2, 0);
    x.add_edge(0, 1);
    x.add_loop(2);
    out.emplace_back("triangle with extras", x);
  }
  out.emplace_back("cover (2; 1,1)", derived_cover(cayley_serre(2, {1, 1})));
  out.emplace_back("cover (4; 1,1)", derived_cover(cayley_serre(4, {1, 1})));
  out.emplace_back("cover (8; 3,5)", derived_cover(cayley_serre(8, {3, 5})));
  out.emplace_back("cover (9; 1,4,20)", derived_cover(cayley_serre(9, {1, 4, 20})));
  out.emplace_back("cover (25; 1,7,-13)", derived_cover(cayley_serre(25, {1, 7, -13})));
  return out;
}

}  // namespace giwa::testing
