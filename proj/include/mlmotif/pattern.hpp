#pragma once

#include <optional>
#include <vector>

#include "mlmotif/graph.hpp"

namespace mlmotif {

/// Allowed host vertices for one pattern vertex. nullopt means "any vertex".
using VertexList = std::optional<std::vector<Vertex>>;

/// A small pattern graph H with per-vertex host lists V_1..V_k.
struct Pattern {
  Graph graph;
  std::vector<VertexList> lists;  // sorted, duplicate-free when present

  Pattern() = default;
  explicit Pattern(Graph h) : graph(std::move(h)), lists(graph.order()) {}
  Pattern(Graph h, std::vector<VertexList> l);

  std::size_t size() const noexcept { return graph.order(); }
  bool unrestricted() const;
};

/// Throws std::invalid_argument if k == 0, the list vector has the wrong
/// length, or a list names a vertex >= host_order.
void validate_pattern(const Pattern& pat, std::size_t host_order);

/// One host vertex per pattern vertex.
struct Embedding {
  std::vector<Vertex> image;
};

/// Injective, edge preserving and list respecting.
bool is_embedding(const Graph& host, const Pattern& pat, const Embedding& emb);

/// Dense membership table for the pattern's lists against one host size.
class CandidateTable {
 public:
  CandidateTable(const Pattern& pat, std::size_t host_order);

  bool allows(std::size_t pattern_vertex, Vertex x) const {
    return full_[pattern_vertex] || member_[pattern_vertex][x];
  }
  bool full(std::size_t pattern_vertex) const { return full_[pattern_vertex]; }
  /// Only meaningful when !full(pattern_vertex).
  const std::vector<Vertex>& list(std::size_t pattern_vertex) const { return lists_[pattern_vertex]; }
  std::size_t host_order() const noexcept { return host_order_; }

 private:
  std::size_t host_order_;
  std::vector<bool> full_;
  std::vector<std::vector<Vertex>> lists_;
  std::vector<std::vector<char>> member_;
};

}  // namespace mlmotif
