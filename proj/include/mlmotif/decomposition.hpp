#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mlmotif/graph.hpp"

namespace mlmotif {

struct PeelRecord {
  std::size_t step = 0;  // 1-based
  Vertex removed = 0;    // original vertex id
  std::size_t max_degree = 0;  // of the residual graph after this removal
};

struct PeelTrace {
  std::vector<PeelRecord> records;
};

/// Greedily deletes a maximum-degree vertex `steps` times, smallest id first
/// among ties. Throws std::invalid_argument when steps > n.
PeelTrace peel(const Graph& g, std::size_t steps);

struct AbdSplit {
  std::vector<Vertex> high_degree;  // X_G, in removal order
  std::size_t residual_max_degree = 0;
};

/// Peels until the residual maximum degree is at most `target`.
/// Greedy, so |X_G| is not minimum in general.
AbdSplit abd_split(const Graph& g, std::size_t target);

/// Smallest l such that at most l vertices have degree > 2l.
std::size_t abd_parameter(const Graph& g);

/// Smallest l such that greedily peeling l vertices leaves maximum degree
/// at most l (the deletion-set form of almost bounded degree).
std::size_t abd_split_parameter(const Graph& g);

inline constexpr std::size_t kVertexCoverGuard = 32;

/// A vertex cover with at most `bound` vertices, found by a bounded search
/// tree, or nullopt if none exists. Throws std::invalid_argument when
/// bound > kVertexCoverGuard.
std::optional<std::vector<Vertex>> vertex_cover_exact(const Graph& g, std::size_t bound);

/// Minimum vertex cover if its size is at most `guard`.
std::optional<std::vector<Vertex>> minimum_vertex_cover(const Graph& g,
                                                        std::size_t guard = kVertexCoverGuard);

}  // namespace mlmotif
