#include "giwa/voltage.hpp"

#include "giwa/cyclotomic.hpp"
#include "giwa/zeta.hpp"

#include <nlohmann/json.hpp>

#include <deque>
#include <numeric>
#include <thread>

namespace giwa {

std::int64_t cycle_voltage_gcd(const Multigraph& base, std::int64_t modulus, const std::vector<std::int64_t>& voltages) {
  // Potentials along a BFS tree; each non-tree edge contributes its net voltage.
  const auto g = static_cast<std::size_t>(base.vertex_count());
  std::vector<std::int64_t> potential(g, 0);
  std::vector<bool> seen(g, false);
  std::vector<std::vector<EdgeId>> out(g);
  for (const auto& e : base.directed_edges()) out[static_cast<std::size_t>(e.origin)].push_back(e.id);
  std::vector<bool> tree_edge(base.directed_edge_count(), false);
  std::int64_t acc = modulus;
  if (g == 0) return acc;
  std::deque<VertexId> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId id : out[static_cast<std::size_t>(v)]) {
      const auto& e = base.edge(id);
      const auto w = static_cast<std::size_t>(e.terminus);
      if (!seen[w]) {
        seen[w] = true;
        potential[w] = mod_floor(potential[static_cast<std::size_t>(v)] + voltages[static_cast<std::size_t>(id)], modulus);
        tree_edge[static_cast<std::size_t>(id)] = true;
        tree_edge[static_cast<std::size_t>(e.inverse)] = true;
        queue.push_back(e.terminus);
      }
    }
  }
  for (const auto& e : base.directed_edges()) {
    if (tree_edge[static_cast<std::size_t>(e.id)]) continue;
    const std::int64_t net = potential[static_cast<std::size_t>(e.origin)] + voltages[static_cast<std::size_t>(e.id)] -
                             potential[static_cast<std::size_t>(e.terminus)];
    acc = gcd(acc, mod_floor(net, modulus));
  }
  return acc;
}

VoltageGraph VoltageGraph::create(Multigraph base, std::int64_t modulus, std::vector<std::int64_t> voltages) {
  if (modulus < 1) throw std::invalid_argument("voltage modulus must be positive");
  if (const auto violations = validate_serre(base); !violations.empty()) {
    throw std::invalid_argument("invalid base multigraph: " + violations.front().message);
  }
  if (voltages.size() != base.directed_edge_count()) {
    throw std::invalid_argument("one voltage per directed edge is required");
  }
  for (auto& v : voltages) v = mod_floor(v, modulus);
  for (const auto& e : base.directed_edges()) {
    const auto here = voltages[static_cast<std::size_t>(e.id)];
    const auto back = voltages[static_cast<std::size_t>(e.inverse)];
    if (mod_floor(here + back, modulus) != 0) {
      throw std::invalid_argument("voltage of edge " + std::to_string(e.id) + " is not minus that of its inverse");
    }
  }
  if (cycle_voltage_gcd(base, modulus, voltages) != 1) {
    throw std::invalid_argument("voltages do not generate Z/" + std::to_string(modulus) + "Z; the cover is disconnected");
  }
  return VoltageGraph(std::move(base), modulus, std::move(voltages));
}

VoltageGraph VoltageGraph::reduced_modulo(std::int64_t d) const {
  if (d < 1 || modulus_ % d != 0) throw std::invalid_argument("reduced_modulo: d must divide the modulus");
  std::vector<std::int64_t> v = voltages_;
  for (auto& x : v) x = mod_floor(x, d);
  return VoltageGraph(base_, d, std::move(v));
}

VoltageGraph cayley_serre(std::int64_t modulus, const std::vector<std::int64_t>& generators) {
  if (modulus < 1) throw std::invalid_argument("cayley_serre: modulus must be positive");
  if (generators.empty()) throw std::invalid_argument("cayley_serre: at least one generator is required");
  std::int64_t acc = modulus;
  for (auto a : generators) acc = gcd(acc, a);
  if (acc != 1) {
    throw std::invalid_argument("cayley_serre: generators and modulus have common divisor " + std::to_string(acc));
  }
  Multigraph base = bouquet(static_cast<int>(generators.size()));
  std::vector<std::int64_t> voltages;
  voltages.reserve(2 * generators.size());
  for (auto a : generators) {
    voltages.push_back(mod_floor(a, modulus));
    voltages.push_back(mod_floor(-a, modulus));
  }
  return VoltageGraph::create(std::move(base), modulus, std::move(voltages));
}

Multigraph derived_cover(const VoltageGraph& vg) {
  const std::int64_t m = vg.modulus();
  const Multigraph& base = vg.base();
  std::vector<DirectedEdge> edges;
  edges.reserve(base.directed_edge_count() * static_cast<std::size_t>(m));
  for (const auto& e : base.directed_edges()) {
    const std::int64_t s = vg.voltage(e.id);
    for (std::int64_t k = 0; k < m; ++k) {
      const std::int64_t k2 = (k + s) % m;
      edges.push_back({e.id * m + k, e.origin * m + k, e.terminus * m + k2, e.inverse * m + k2});
    }
  }
  Multigraph cover = Multigraph::from_directed_edges(base.vertex_count() * m, std::move(edges));
  if (!is_connected(cover)) throw std::domain_error("derived_cover: the cover is disconnected");
  return cover;
}

BigMatrix artin_A_sigma(const VoltageGraph& vg, std::int64_t sigma) {
  const Index g = vg.base().vertex_count();
  const std::int64_t s = mod_floor(sigma, vg.modulus());
  BigMatrix a = BigMatrix::Zero(g, g);
  for (const auto& e : vg.base().directed_edges()) {
    if (vg.voltage(e.id) == s) a(e.origin, e.terminus) += 1;
  }
  return a;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("divisors: n must be positive");
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

namespace {

/// p mod f for monic f, staying in Z[y].
BigPoly reduce_mod_monic(const BigPoly& p, const BigPoly& f) {
  const long n = f.degree();
  std::vector<BigInt> c = p.coefficients();
  for (long top = static_cast<long>(c.size()) - 1; top >= n; --top) {
    const BigInt lead = c[static_cast<std::size_t>(top)];
    if (lead == 0) continue;
    for (long k = 0; k <= n; ++k) c[static_cast<std::size_t>(top - n + k)] -= lead * f.coeff(static_cast<std::size_t>(k));
  }
  if (static_cast<long>(c.size()) > n) c.resize(static_cast<std::size_t>(n));
  return BigPoly(std::move(c));
}

}  // namespace

BigPoly orbit_h_poly(const VoltageGraph& vg, std::int64_t d, bool parallel) {
  if (d < 1 || vg.modulus() % d != 0) throw std::invalid_argument("orbit_h_poly: d must divide the modulus");
  if (d == 1) return ihara_h(vg.base(), parallel);

  const Multigraph& base = vg.base();
  const Index g = base.vertex_count();
  const BigPoly phi = cyclotomic_polynomial(d);
  const long deg_phi = phi.degree();

  // Entries of A(y) reduced modulo Phi_d, exponents taken mod d.
  std::vector<std::vector<BigInt>> raw(static_cast<std::size_t>(g * g), std::vector<BigInt>(static_cast<std::size_t>(d), BigInt(0)));
  for (const auto& e : base.directed_edges()) {
    raw[static_cast<std::size_t>(e.origin * g + e.terminus)][static_cast<std::size_t>(vg.voltage(e.id) % d)] += 1;
  }
  std::vector<BigPoly> a_y;
  a_y.reserve(raw.size());
  for (auto& c : raw) a_y.push_back(reduce_mod_monic(BigPoly(std::move(c)), phi));
  std::vector<BigInt> valency(static_cast<std::size_t>(g));
  for (Index i = 0; i < g; ++i) valency[static_cast<std::size_t>(i)] = base.valency(i);

  const auto y_degree = static_cast<std::size_t>(g * (deg_phi - 1));
  auto orbit_value = [&](const BigInt& u) {
    const BigInt u2 = u * u;
    auto matrix_at = [&](const BigInt& y) {
      BigMatrix m(g, g);
      for (Index i = 0; i < g; ++i) {
        for (Index j = 0; j < g; ++j) {
          BigInt v = -u * a_y[static_cast<std::size_t>(i * g + j)].evaluate(y);
          if (i == j) v += 1 + (valency[static_cast<std::size_t>(i)] - 1) * u2;
          m(i, j) = std::move(v);
        }
      }
      return m;
    };
    const BigPoly f = determinant_polynomial(matrix_at, y_degree);
    return resultant(phi, f);
  };

  const auto u_points = interpolation_points(static_cast<std::size_t>(2 * g * deg_phi + 1));
  std::vector<BigInt> values(u_points.size());
  if (parallel) {
    const unsigned workers = std::max(1U, std::thread::hardware_concurrency());
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < u_points.size(); k += workers) values[k] = orbit_value(u_points[k]);
      });
    }
  } else {
    for (std::size_t k = 0; k < u_points.size(); ++k) values[k] = orbit_value(u_points[k]);
  }
  return interpolate(u_points, values);
}

ProductFormulaReport verify_product_formula(const VoltageGraph& vg, bool parallel) {
  ProductFormulaReport report;
  report.lhs = ihara_h(derived_cover(vg), parallel);
  report.rhs = BigPoly::constant(1);
  for (auto d : divisors(vg.modulus())) report.rhs *= orbit_h_poly(vg, d, parallel);
  report.holds = report.lhs == report.rhs;
  return report;
}

IntegerDecompositionReport verify_integer_decomposition(const VoltageGraph& vg, bool parallel) {
  if (euler_characteristic(vg.base()) == 0) {
    throw std::domain_error("integer decomposition needs chi(base) != 0");
  }
  IntegerDecompositionReport report;
  report.kappa_base = spanning_tree_count(vg.base());
  report.kappa_cover = spanning_tree_count(derived_cover(vg));
  report.lhs = BigInt(static_cast<long>(vg.modulus())) * report.kappa_cover;
  report.rhs = report.kappa_base;
  report.nonvanishing = true;
  for (auto d : divisors(vg.modulus())) {
    if (d == 1) continue;
    BigInt value = orbit_h_poly(vg, d, parallel).evaluate(BigInt(1));
    if (value == 0) report.nonvanishing = false;
    report.rhs *= value;
    report.orbit_values.push_back(std::move(value));
  }
  report.holds = report.nonvanishing && report.lhs == report.rhs;
  return report;
}

nlohmann::json to_json(const VoltageGraph& vg) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : vg.base().directed_edges()) {
    if (e.id < e.inverse) edges.push_back({{"u", e.origin}, {"v", e.terminus}, {"voltage", vg.voltage(e.id)}});
  }
  return {{"m", vg.modulus()}, {"vertices", vg.base().vertex_count()}, {"edges", edges}};
}

VoltageGraph voltage_graph_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("m")) throw std::invalid_argument("voltage graph JSON needs a modulus \"m\"");
    const auto m = j.at("m").get<std::int64_t>();
    Multigraph base = multigraph_from_json(j);
    std::vector<std::int64_t> voltages;
    for (const auto& e : j.at("edges")) {
      const auto v = e.contains("voltage") ? e.at("voltage").get<std::int64_t>() : 0;
      voltages.push_back(v);
      voltages.push_back(-v);
    }
    return VoltageGraph::create(std::move(base), m, std::move(voltages));
  } catch (const nlohmann::json::exception& err) {
    throw std::invalid_argument(std::string("malformed voltage graph JSON: ") + err.what());
  }
}

}  // namespace giwa
