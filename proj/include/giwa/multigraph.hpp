#pragma once

// Finite multigraphs in Serre's formalism: directed edges paired by a
// fixed-point-free inversion, loops and parallel edges allowed.

#include "giwa/bigint.hpp"
#include "giwa/matrix.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace giwa {

using VertexId = std::int64_t;
using EdgeId = std::int64_t;

struct DirectedEdge {
  EdgeId id = 0;
  VertexId origin = 0;
  VertexId terminus = 0;
  EdgeId inverse = 0;

  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(VertexId vertex_count) : vertex_count_(vertex_count) {}

  /// Raw construction from a directed edge table; nothing is checked (use
  /// validate_serre). Edge ids must equal their positions.
  static Multigraph from_directed_edges(VertexId vertex_count, std::vector<DirectedEdge> edges);

  /// Adds an undirected loop at v; returns the id of the first directed edge
  /// of the pair (its inverse is id + 1).
  EdgeId add_loop(VertexId v);
  EdgeId add_edge(VertexId u, VertexId v);

  VertexId vertex_count() const { return vertex_count_; }
  /// |E^+|, the number of directed edges.
  std::size_t directed_edge_count() const { return edges_.size(); }
  /// |E| = |E^+| / 2.
  std::size_t undirected_edge_count() const { return edges_.size() / 2; }

  const std::vector<DirectedEdge>& directed_edges() const { return edges_; }
  const DirectedEdge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }

  /// Number of directed edges with origin v (loops count twice).
  std::int64_t valency(VertexId v) const;

  /// Neighbour lists over directed edges, loops excluded.
  std::vector<std::vector<VertexId>> neighbours() const;

  friend bool operator==(const Multigraph&, const Multigraph&) = default;

 private:
  void check_vertex(VertexId v) const;

  VertexId vertex_count_ = 0;
  std::vector<DirectedEdge> edges_;
};

/// Bouquet B_t: one vertex, t loops.
Multigraph bouquet(int loops);
/// Cycle graph C_g.
Multigraph cycle_graph(VertexId g);

enum class ViolationKind {
  kBadIncidence,       // origin/terminus outside the vertex range
  kBadInverseId,       // inverse id outside the edge range, or id != position
  kNotInvolution,      // inverse(inverse(e)) != e
  kFixedPoint,         // inverse(e) == e
  kIncidenceMismatch,  // o(inverse e) != t(e) or t(inverse e) != o(e)
  kDisconnected,
  kLowValency,         // a vertex of valency < 2
  kEmpty,              // no vertices
};

struct SerreViolation {
  ViolationKind kind;
  std::int64_t subject = -1;  // offending edge or vertex id, when there is one
  std::string message;
};

std::string to_string(ViolationKind kind);

/// Every axiom violation found; empty when the multigraph is valid.
std::vector<SerreViolation> validate_serre(const Multigraph& x);

bool is_connected(const Multigraph& x);

/// a_ii = 2 * loops at i, a_ij = edges between i and j.
BigMatrix adjacency_matrix(const Multigraph& x);
BigMatrix valency_matrix(const Multigraph& x);
/// Q = D - A.
BigMatrix laplacian(const Multigraph& x);

/// chi(X) = |V| - |E|.
std::int64_t euler_characteristic(const Multigraph& x);
/// b_1(X) = 1 - chi(X) for connected X.
std::int64_t betti1(const Multigraph& x);

enum class MatrixTreeMethod {
  kAuto,    // dense below kDenseMatrixTreeLimit vertices, banded above
  kDense,   // Bareiss on the full reduced Laplacian
  kBanded,  // Bareiss on a bandwidth-reducing reordering
};

inline constexpr VertexId kDenseMatrixTreeLimit = 64;
inline constexpr VertexId kDefaultMatrixTreeCap = VertexId{1} << 15;

struct MatrixTreeOptions {
  VertexId deleted_vertex = 0;
  MatrixTreeMethod method = MatrixTreeMethod::kAuto;
  VertexId vertex_cap = kDefaultMatrixTreeCap;
};

/// kappa_X: the determinant of the Laplacian with one row and column removed.
/// Throws std::domain_error for a disconnected graph and std::length_error
/// above the vertex cap.
BigInt spanning_tree_count(const Multigraph& x, const MatrixTreeOptions& options = {});

/// A vertex order with small bandwidth for the Laplacian (best of the
/// natural order, a zig-zag order suited to circulants, and Cuthill-McKee
/// orders). order[k] is the vertex placed at position k.
std::vector<VertexId> low_bandwidth_order(const Multigraph& x);

/// Graphviz rendering; loops become self-edges and parallel edges repeat.
std::string to_dot(const Multigraph& x, const std::string& name = "X");

/// {"vertices": g, "edges": [{"u": .., "v": ..}, ...]}, one entry per
/// undirected edge.
nlohmann::json to_json(const Multigraph& x);
/// Accepts the schema above; "vertices" may be omitted (then inferred from
/// the largest endpoint). Extra keys such as "voltage" are ignored.
/// Throws std::invalid_argument on malformed input.
Multigraph multigraph_from_json(const nlohmann::json& j);

}  // namespace giwa
