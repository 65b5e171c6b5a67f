#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlmotif {

using Vertex = std::uint32_t;
using LayerId = std::uint32_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr std::size_t kNoEdge = std::numeric_limits<std::size_t>::max();

/// Undirected edge, always stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Simple undirected graph on vertices 0..n-1 with sorted CSR adjacency.
/// Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  /// Throws GraphError on a self-loop, a repeated pair, or an endpoint >= n.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t order() const noexcept { return offsets_.size() - 1; }
  std::size_t size() const noexcept { return edges_.size(); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(Vertex u, Vertex v) const;

  /// Sorted lexicographically by (u, v).
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t edge_index(Vertex u, Vertex v) const;

  std::size_t max_degree() const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
};

/// Checked degree query; throws std::out_of_range for an unknown vertex.
std::size_t degree(const Graph& g, Vertex v);

/// Result of deleting or keeping a vertex subset. Vertex ids in `graph` are
/// dense; `to_original` maps them back and `from_original` maps forward
/// (kNoVertex for deleted vertices).
struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_original;
  std::vector<Vertex> from_original;
};

Subgraph remove_vertices(const Graph& g, std::span<const Vertex> removed);
Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> kept);

/// BFS distance; nullopt when v is unreachable from u.
std::optional<std::size_t> distance(const Graph& g, Vertex u, Vertex v);

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();
std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source);

/// Proper 2-colouring (entries 0/1) if one exists.
std::optional<std::vector<std::uint8_t>> two_coloring(const Graph& g);
bool is_bipartite(const Graph& g);

bool is_star_forest(const Graph& g);
bool is_matching(const Graph& g);
bool is_connected(const Graph& g);

/// Component id per vertex, ids assigned in order of smallest member.
std::vector<std::uint32_t> connected_components(const Graph& g, std::size_t* count = nullptr);

/// Largest BFS distance between two vertices; nullopt for disconnected graphs.
std::optional<std::size_t> diameter(const Graph& g);

/// Length of the shortest odd cycle; nullopt when the graph is bipartite.
std::optional<std::size_t> odd_girth(const Graph& g);

struct LayeredEdge {
  Vertex u = 0;
  Vertex v = 0;
  LayerId layer = 0;
};

/// A flattened graph plus an explicit partition of its edges into layers.
/// A pair offered in several layers is stored once, in its lowest layer, and
/// a warning is recorded.
class LayeredGraph {
 public:
  LayeredGraph() = default;
  LayeredGraph(std::size_t n, std::span<const LayeredEdge> edges, std::size_t layer_count = 0);

  const Graph& flat() const noexcept { return flat_; }
  std::size_t order() const noexcept { return flat_.order(); }
  std::size_t layer_count() const noexcept { return layer_count_; }

  LayerId layer_of_edge(std::size_t edge_index) const { return layer_of_[edge_index]; }
  std::optional<LayerId> layer_of(Vertex u, Vertex v) const;

  /// The layer as its own graph on the full vertex set.
  Graph layer(LayerId id) const;

  std::vector<LayeredEdge> layered_edges() const;
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  Graph flat_;
  std::vector<LayerId> layer_of_;
  std::size_t layer_count_ = 1;
  std::vector<std::string> warnings_;
};

struct LayeredSubgraph {
  LayeredGraph graph;
  std::vector<Vertex> to_original;
  std::vector<Vertex> from_original;
};

/// Deletes vertices from every layer, keeping layer ids and the layer count.
LayeredSubgraph remove_vertices(const LayeredGraph& g, std::span<const Vertex> removed);

}  // namespace mlmotif
