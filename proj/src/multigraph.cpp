#include "giwa/multigraph.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace giwa {

Multigraph Multigraph::from_directed_edges(VertexId vertex_count, std::vector<DirectedEdge> edges) {
  Multigraph x(vertex_count);
  x.edges_ = std::move(edges);
  return x;
}

void Multigraph::check_vertex(VertexId v) const {
  if (v < 0 || v >= vertex_count_) throw std::out_of_range("vertex id " + std::to_string(v) + " out of range");
}

EdgeId Multigraph::add_loop(VertexId v) { return add_edge(v, v); }

EdgeId Multigraph::add_edge(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  const auto e = static_cast<EdgeId>(edges_.size());
  edges_.push_back({e, u, v, e + 1});
  edges_.push_back({e + 1, v, u, e});
  return e;
}

std::int64_t Multigraph::valency(VertexId v) const {
  check_vertex(v);
  return std::count_if(edges_.begin(), edges_.end(), [v](const DirectedEdge& e) { return e.origin == v; });
}

std::vector<std::vector<VertexId>> Multigraph::neighbours() const {
  std::vector<std::vector<VertexId>> adj(static_cast<std::size_t>(vertex_count_));
  for (const auto& e : edges_) {
    if (e.origin != e.terminus) adj[static_cast<std::size_t>(e.origin)].push_back(e.terminus);
  }
  return adj;
}

Multigraph bouquet(int loops) {
  Multigraph x(1);
  for (int k = 0; k < loops; ++k) x.add_loop(0);
  return x;
}

Multigraph cycle_graph(VertexId g) {
  if (g < 1) throw std::invalid_argument("cycle_graph: need at least one vertex");
  Multigraph x(g);
  for (VertexId v = 0; v < g; ++v) x.add_edge(v, (v + 1) % g);
  return x;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kBadIncidence: return "bad-incidence";
    case ViolationKind::kBadInverseId: return "bad-inverse-id";
    case ViolationKind::kNotInvolution: return "not-involution";
    case ViolationKind::kFixedPoint: return "fixed-point";
    case ViolationKind::kIncidenceMismatch: return "incidence-mismatch";
    case ViolationKind::kDisconnected: return "disconnected";
    case ViolationKind::kLowValency: return "low-valency";
    case ViolationKind::kEmpty: return "empty";
  }
  return "unknown";
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

bool in_range(std::int64_t v, std::int64_t n) { return v >= 0 && v < n; }

}  // namespace

std::vector<SerreViolation> validate_serre(const Multigraph& x) {
  std::vector<SerreViolation> out;
  const VertexId g = x.vertex_count();
  if (g <= 0) {
    out.push_back({ViolationKind::kEmpty, -1, "multigraph has no vertices"});
    return out;
  }
  const auto& edges = x.directed_edges();
  const auto count = static_cast<EdgeId>(edges.size());
  std::vector<bool> incident_ok(edges.size(), true);

  for (EdgeId k = 0; k < count; ++k) {
    const auto& e = edges[static_cast<std::size_t>(k)];
    if (e.id != k) out.push_back({ViolationKind::kBadInverseId, k, "edge id does not match its position"});
    if (!in_range(e.origin, g) || !in_range(e.terminus, g)) {
      out.push_back({ViolationKind::kBadIncidence, k, "edge endpoint outside the vertex range"});
      incident_ok[static_cast<std::size_t>(k)] = false;
    }
    if (!in_range(e.inverse, count)) {
      out.push_back({ViolationKind::kBadInverseId, k, "inverse edge id out of range"});
      continue;
    }
    if (e.inverse == k) {
      out.push_back({ViolationKind::kFixedPoint, k, "edge is its own inverse"});
      continue;
    }
    const auto& inv = edges[static_cast<std::size_t>(e.inverse)];
    if (inv.inverse != k) out.push_back({ViolationKind::kNotInvolution, k, "inverse(inverse(e)) != e"});
    if (inv.origin != e.terminus || inv.terminus != e.origin) {
      out.push_back({ViolationKind::kIncidenceMismatch, k, "inverse edge has mismatched endpoints"});
    }
  }

  DisjointSets sets(static_cast<std::size_t>(g));
  std::vector<std::int64_t> valency(static_cast<std::size_t>(g), 0);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (!incident_ok[k]) continue;
    sets.unite(static_cast<std::size_t>(edges[k].origin), static_cast<std::size_t>(edges[k].terminus));
    ++valency[static_cast<std::size_t>(edges[k].origin)];
  }
  const std::size_t root = sets.find(0);
  for (VertexId v = 1; v < g; ++v) {
    if (sets.find(static_cast<std::size_t>(v)) != root) {
      out.push_back({ViolationKind::kDisconnected, v, "vertex not connected to vertex 0"});
      break;
    }
  }
  for (VertexId v = 0; v < g; ++v) {
    if (valency[static_cast<std::size_t>(v)] < 2) {
      out.push_back({ViolationKind::kLowValency, v, "vertex valency below 2"});
    }
  }
  return out;
}

bool is_connected(const Multigraph& x) {
  const VertexId g = x.vertex_count();
  if (g <= 0) return false;
  DisjointSets sets(static_cast<std::size_t>(g));
  for (const auto& e : x.directed_edges()) sets.unite(static_cast<std::size_t>(e.origin), static_cast<std::size_t>(e.terminus));
  const std::size_t root = sets.find(0);
  for (VertexId v = 1; v < g; ++v)
    if (sets.find(static_cast<std::size_t>(v)) != root) return false;
  return true;
}

BigMatrix adjacency_matrix(const Multigraph& x) {
  const VertexId g = x.vertex_count();
  BigMatrix a = BigMatrix::Zero(g, g);
  // Counting directed edges by (origin, terminus) gives 2 per loop on the
  // diagonal and one per undirected edge off it.
  for (const auto& e : x.directed_edges()) a(e.origin, e.terminus) += 1;
  return a;
}

BigMatrix valency_matrix(const Multigraph& x) {
  const VertexId g = x.vertex_count();
  BigMatrix d = BigMatrix::Zero(g, g);
  for (const auto& e : x.directed_edges()) d(e.origin, e.origin) += 1;
  return d;
}

BigMatrix laplacian(const Multigraph& x) {
  BigMatrix q = valency_matrix(x);
  for (const auto& e : x.directed_edges()) q(e.origin, e.terminus) -= 1;
  return q;
}

std::int64_t euler_characteristic(const Multigraph& x) {
  return x.vertex_count() - static_cast<std::int64_t>(x.undirected_edge_count());
}

std::int64_t betti1(const Multigraph& x) { return 1 - euler_characteristic(x); }

namespace {

std::vector<VertexId> positions_of(const std::vector<VertexId>& order) {
  std::vector<VertexId> pos(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[static_cast<std::size_t>(order[k])] = static_cast<VertexId>(k);
  return pos;
}

VertexId bandwidth_of(const Multigraph& x, const std::vector<VertexId>& order) {
  const auto pos = positions_of(order);
  VertexId w = 0;
  for (const auto& e : x.directed_edges()) {
    const VertexId d = pos[static_cast<std::size_t>(e.origin)] - pos[static_cast<std::size_t>(e.terminus)];
    w = std::max(w, d < 0 ? -d : d);
  }
  return w;
}

std::vector<VertexId> cuthill_mckee(const std::vector<std::vector<VertexId>>& adj, VertexId start) {
  const auto n = adj.size();
  std::vector<VertexId> order;
  order.reserve(n);
  std::vector<bool> seen(n, false);
  auto degree = [&](VertexId v) { return adj[static_cast<std::size_t>(v)].size(); };
  auto bfs_from = [&](VertexId s) {
    std::deque<VertexId> queue{s};
    seen[static_cast<std::size_t>(s)] = true;
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      order.push_back(v);
      std::vector<VertexId> next;
      for (VertexId u : adj[static_cast<std::size_t>(v)]) {
        if (!seen[static_cast<std::size_t>(u)]) {
          seen[static_cast<std::size_t>(u)] = true;
          next.push_back(u);
        }
      }
      std::stable_sort(next.begin(), next.end(), [&](VertexId a, VertexId b) { return degree(a) < degree(b); });
      queue.insert(queue.end(), next.begin(), next.end());
    }
  };
  bfs_from(start);
  for (std::size_t v = 0; v < n; ++v)
    if (!seen[v]) bfs_from(static_cast<VertexId>(v));
  return order;
}

}  // namespace

std::vector<VertexId> low_bandwidth_order(const Multigraph& x) {
  const VertexId g = x.vertex_count();
  std::vector<std::vector<VertexId>> candidates;

  std::vector<VertexId> natural(static_cast<std::size_t>(g));
  std::iota(natural.begin(), natural.end(), 0);
  candidates.push_back(natural);

  // 0, 1, g-1, 2, g-2, ...: turns a cyclic band into a linear one.
  std::vector<VertexId> zigzag;
  zigzag.reserve(static_cast<std::size_t>(g));
  zigzag.push_back(0);
  for (VertexId k = 1; static_cast<VertexId>(zigzag.size()) < g; ++k) {
    zigzag.push_back(k);
    if (static_cast<VertexId>(zigzag.size()) < g && g - k != k) zigzag.push_back(g - k);
  }
  candidates.push_back(zigzag);

  const auto adj = x.neighbours();
  const auto cm0 = cuthill_mckee(adj, 0);
  candidates.push_back(cm0);
  candidates.push_back(cuthill_mckee(adj, cm0.back()));

  std::size_t best = 0;
  VertexId best_w = bandwidth_of(x, candidates[0]);
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    const VertexId w = bandwidth_of(x, candidates[k]);
    if (w < best_w) {
      best_w = w;
      best = k;
    }
  }
  return candidates[best];
}

BigInt spanning_tree_count(const Multigraph& x, const MatrixTreeOptions& options) {
  const VertexId g = x.vertex_count();
  if (g > options.vertex_cap) {
    throw std::length_error("spanning_tree_count: " + std::to_string(g) + " vertices exceeds the matrix-tree cap of " +
                            std::to_string(options.vertex_cap));
  }
  if (options.deleted_vertex < 0 || options.deleted_vertex >= g) {
    throw std::invalid_argument("spanning_tree_count: deleted vertex out of range");
  }
  if (!is_connected(x)) throw std::domain_error("spanning_tree_count: multigraph is disconnected");
  if (g == 1) return 1;

  MatrixTreeMethod method = options.method;
  if (method == MatrixTreeMethod::kAuto) {
    method = g <= kDenseMatrixTreeLimit ? MatrixTreeMethod::kDense : MatrixTreeMethod::kBanded;
  }

  if (method == MatrixTreeMethod::kDense) {
    const BigMatrix q = laplacian(x);
    BigMatrix reduced(g - 1, g - 1);
    for (Index i = 0, ri = 0; i < g; ++i) {
      if (i == options.deleted_vertex) continue;
      for (Index j = 0, rj = 0; j < g; ++j) {
        if (j == options.deleted_vertex) continue;
        reduced(ri, rj++) = q(i, j);
      }
      ++ri;
    }
    return bareiss_determinant(reduced);
  }

  std::vector<VertexId> order = low_bandwidth_order(x);
  order.erase(std::find(order.begin(), order.end(), options.deleted_vertex));
  std::vector<VertexId> pos(static_cast<std::size_t>(g), -1);
  for (std::size_t k = 0; k < order.size(); ++k) pos[static_cast<std::size_t>(order[k])] = static_cast<VertexId>(k);

  std::vector<std::map<Index, std::int64_t>> rows(order.size());
  for (const auto& e : x.directed_edges()) {
    if (e.origin == e.terminus) continue;
    const VertexId pi = pos[static_cast<std::size_t>(e.origin)];
    if (pi < 0) continue;
    rows[static_cast<std::size_t>(pi)][pi] += 1;
    const VertexId pj = pos[static_cast<std::size_t>(e.terminus)];
    if (pj >= 0) rows[static_cast<std::size_t>(pi)][pj] -= 1;
  }
  SymmetricSparse sparse;
  sparse.size = static_cast<Index>(order.size());
  sparse.rows.resize(order.size());
  Index w = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [j, value] : rows[i]) {
      if (value == 0) continue;
      sparse.rows[i].emplace_back(j, BigInt(static_cast<long>(value)));
      w = std::max<Index>(w, std::abs(static_cast<Index>(i) - j));
    }
  }
  return banded_spd_determinant(sparse, w);
}

std::string to_dot(const Multigraph& x, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (VertexId v = 0; v < x.vertex_count(); ++v) out << "  " << v << ";\n";
  for (const auto& e : x.directed_edges()) {
    if (e.id < e.inverse) out << "  " << e.origin << " -- " << e.terminus << ";\n";
  }
  out << "}\n";
  return out.str();
}

nlohmann::json to_json(const Multigraph& x) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : x.directed_edges()) {
    if (e.id < e.inverse) edges.push_back({{"u", e.origin}, {"v", e.terminus}});
  }
  return {{"vertices", x.vertex_count()}, {"edges", edges}};
}

Multigraph multigraph_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("edges") || !j.at("edges").is_array()) {
      throw std::invalid_argument("multigraph JSON needs an \"edges\" array");
    }
    VertexId g = 0;
    for (const auto& e : j.at("edges")) {
      g = std::max({g, e.at("u").get<VertexId>() + 1, e.at("v").get<VertexId>() + 1});
    }
    if (j.contains("vertices")) {
      const auto declared = j.at("vertices").get<VertexId>();
      if (declared < g) throw std::invalid_argument("edge endpoint exceeds declared vertex count");
      g = declared;
    }
    Multigraph x(g);
    for (const auto& e : j.at("edges")) {
      const auto u = e.at("u").get<VertexId>();
      const auto v = e.at("v").get<VertexId>();
      if (u < 0 || v < 0) throw std::invalid_argument("negative vertex id");
      x.add_edge(u, v);
    }
    return x;
  } catch (const nlohmann::json::exception& err) {
    throw std::invalid_argument(std::string("malformed multigraph JSON: ") + err.what());
  }
}

}  // namespace giwa
