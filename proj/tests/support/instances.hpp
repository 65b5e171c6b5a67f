#pragma once

// Seeded random instances shared by the unit tests and the acceptance run.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "mlmotif/gadgets.hpp"
#include "mlmotif/geometric.hpp"
#include "mlmotif/graph.hpp"
#include "mlmotif/pattern.hpp"

namespace fixtures {

using mlmotif::Edge;
using mlmotif::Graph;
using mlmotif::LayeredEdge;
using mlmotif::LayeredGraph;
using mlmotif::LayerId;
using mlmotif::Pattern;
using mlmotif::Rational;
using mlmotif::Vertex;
using mlmotif::VertexList;

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline Graph random_graph(Rng& rng, std::size_t n, double p) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng, p)) edges.push_back({u, v});
    }
  }
  return Graph(n, std::move(edges));
}

inline LayeredGraph random_layered(Rng& rng, std::size_t n, std::size_t layers, double p) {
  std::vector<LayeredEdge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng, p)) edges.push_back({u, v, static_cast<LayerId>(pick(rng, 0, layers - 1))});
    }
  }
  return LayeredGraph(n, edges, layers);
}

/// Random pattern on k vertices; each list is absent with probability 1/2,
/// otherwise a random subset of the host.
inline Pattern random_pattern(Rng& rng, std::size_t k, std::size_t host_n, double edge_p, bool connected) {
  std::set<std::pair<Vertex, Vertex>> chosen;
  if (connected) {
    for (Vertex v = 1; v < k; ++v) chosen.insert({static_cast<Vertex>(pick(rng, 0, v - 1)), v});
  }
  for (Vertex u = 0; u < k; ++u) {
    for (Vertex v = u + 1; v < k; ++v) {
      if (coin(rng, edge_p)) chosen.insert({u, v});
    }
  }
  std::vector<Edge> edges;
  for (auto [u, v] : chosen) edges.push_back({u, v});
  std::vector<VertexList> lists(k);
  for (auto& l : lists) {
    if (coin(rng, 0.5)) continue;
    std::vector<Vertex> ids;
    for (Vertex x = 0; x < host_n; ++x) {
      if (coin(rng, 0.6)) ids.push_back(x);
    }
    l = std::move(ids);
  }
  return Pattern(Graph(k, std::move(edges)), std::move(lists));
}

/// Points on a 0.001 grid of the unit square, with a few forced duplicates.
inline mlmotif::GeometricLayout random_layout(Rng& rng, std::size_t n) {
  mlmotif::GeometricLayout layout;
  for (std::size_t v = 0; v < n; ++v) {
    if (v > 0 && coin(rng, 0.1)) {
      layout.positions.push_back(layout.positions[pick(rng, 0, v - 1)]);
      continue;
    }
    layout.positions.push_back({Rational(static_cast<long long>(pick(rng, 0, 999)), 1000),
                                Rational(static_cast<long long>(pick(rng, 0, 999)), 1000)});
  }
  return layout;
}

/// Unit-disc style host: u ~ v when their squared distance is at most r2,
/// spread over `layers` layers at random.
inline LayeredGraph disc_host(Rng& rng, const mlmotif::GeometricLayout& layout, const Rational& r2,
                              std::size_t layers) {
  std::vector<LayeredEdge> edges;
  const std::size_t n = layout.positions.size();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const Rational dx = layout.positions[u].x - layout.positions[v].x;
      const Rational dy = layout.positions[u].y - layout.positions[v].y;
      if (dx * dx + dy * dy <= r2) edges.push_back({u, v, static_cast<LayerId>(pick(rng, 0, layers - 1))});
    }
  }
  return LayeredGraph(n, edges, layers);
}

/// k classes of 1..max_per_class vertices; cross-class pairs are edges with
/// probability p, same-class pairs never.
inline mlmotif::CliqueInstance random_clique_instance(Rng& rng, std::size_t k, std::size_t max_per_class, double p) {
  mlmotif::CliqueInstance inst;
  inst.k = k;
  for (std::uint32_t c = 0; c < k; ++c) {
    const std::size_t size = pick(rng, 1, max_per_class);
    for (std::size_t t = 0; t < size; ++t) inst.color.push_back(c);
  }
  std::vector<Edge> edges;
  for (Vertex u = 0; u < inst.color.size(); ++u) {
    for (Vertex v = u + 1; v < inst.color.size(); ++v) {
      if (inst.color[u] != inst.color[v] && coin(rng, p)) edges.push_back({u, v});
    }
  }
  inst.graph = Graph(inst.color.size(), edges);
  return inst;
}

}  // namespace fixtures
