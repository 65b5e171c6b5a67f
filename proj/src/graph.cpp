#include "mlmotif/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace mlmotif {

Graph::Graph(std::size_t n) : offsets_(n + 1, 0) {}

Graph::Graph(std::size_t n, std::vector<Edge> edges) : edges_(std::move(edges)), offsets_(n + 1, 0) {
  for (Edge& e : edges_) {
    if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
    if (e.u >= n || e.v >= n) {
      throw GraphError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       "} references a vertex outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
    }
    e = make_edge(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw GraphError("repeated edge {" + std::to_string(dup->u) + "," + std::to_string(dup->v) + "}");
  }

  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[fill[e.u]++] = e.v;
    adjacency_[fill[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
  }
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::edge_index(Vertex u, Vertex v) const {
  const Edge key = make_edge(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return kNoEdge;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < order(); ++v) best = std::max(best, degree(static_cast<Vertex>(v)));
  return best;
}

std::size_t degree(const Graph& g, Vertex v) {
  if (v >= g.order()) throw std::out_of_range("unknown vertex " + std::to_string(v));
  return g.degree(v);
}

namespace {

Subgraph keep_mask(const Graph& g, const std::vector<bool>& keep) {
  Subgraph out;
  out.from_original.assign(g.order(), kNoVertex);
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (keep[v]) {
      out.from_original[v] = static_cast<Vertex>(out.to_original.size());
      out.to_original.push_back(static_cast<Vertex>(v));
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (keep[e.u] && keep[e.v]) edges.push_back({out.from_original[e.u], out.from_original[e.v]});
  }
  out.graph = Graph(out.to_original.size(), std::move(edges));
  return out;
}

}  // namespace

Subgraph remove_vertices(const Graph& g, std::span<const Vertex> removed) {
  std::vector<bool> keep(g.order(), true);
  for (Vertex v : removed) {
    if (v >= g.order()) throw std::out_of_range("unknown vertex " + std::to_string(v));
    keep[v] = false;
  }
  return keep_mask(g, keep);
}

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> kept) {
  std::vector<bool> keep(g.order(), false);
  for (Vertex v : kept) {
    if (v >= g.order()) throw std::out_of_range("unknown vertex " + std::to_string(v));
    keep[v] = true;
  }
  return keep_mask(g, keep);
}

std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source) {
  std::vector<std::size_t> dist(g.order(), kUnreachable);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::optional<std::size_t> distance(const Graph& g, Vertex u, Vertex v) {
  if (u >= g.order() || v >= g.order()) throw std::out_of_range("unknown vertex");
  const std::size_t d = bfs_distances(g, u)[v];
  if (d == kUnreachable) return std::nullopt;
  return d;
}

std::optional<std::vector<std::uint8_t>> two_coloring(const Graph& g) {
  constexpr std::uint8_t kUnset = 2;
  std::vector<std::uint8_t> color(g.order(), kUnset);
  std::vector<Vertex> stack;
  for (std::size_t s = 0; s < g.order(); ++s) {
    if (color[s] != kUnset) continue;
    color[s] = 0;
    stack.push_back(static_cast<Vertex>(s));
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(u)) {
        if (color[w] == kUnset) {
          color[w] = static_cast<std::uint8_t>(1 - color[u]);
          stack.push_back(w);
        } else if (color[w] == color[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

bool is_bipartite(const Graph& g) { return two_coloring(g).has_value(); }

std::vector<std::uint32_t> connected_components(const Graph& g, std::size_t* count) {
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> comp(g.order(), kUnset);
  std::uint32_t next = 0;
  std::vector<Vertex> stack;
  for (std::size_t s = 0; s < g.order(); ++s) {
    if (comp[s] != kUnset) continue;
    comp[s] = next;
    stack.push_back(static_cast<Vertex>(s));
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(u)) {
        if (comp[w] == kUnset) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

bool is_connected(const Graph& g) {
  std::size_t count = 0;
  connected_components(g, &count);
  return count <= 1;
}

bool is_star_forest(const Graph& g) {
  // A forest component with at most one vertex of degree > 1 is a star.
  std::size_t count = 0;
  auto comp = connected_components(g, &count);
  std::vector<std::size_t> vertices(count, 0);
  std::vector<std::size_t> edges(count, 0);
  std::vector<std::size_t> hubs(count, 0);
  for (std::size_t v = 0; v < g.order(); ++v) {
    ++vertices[comp[v]];
    if (g.degree(static_cast<Vertex>(v)) > 1) ++hubs[comp[v]];
  }
  for (const Edge& e : g.edges()) ++edges[comp[e.u]];
  for (std::size_t c = 0; c < count; ++c) {
    if (edges[c] + 1 != vertices[c] || hubs[c] > 1) return false;
  }
  return true;
}

bool is_matching(const Graph& g) { return g.max_degree() <= 1; }

std::optional<std::size_t> diameter(const Graph& g) {
  std::size_t best = 0;
  for (std::size_t s = 0; s < g.order(); ++s) {
    for (std::size_t d : bfs_distances(g, static_cast<Vertex>(s))) {
      if (d == kUnreachable) return std::nullopt;
      best = std::max(best, d);
    }
  }
  return best;
}

std::optional<std::size_t> odd_girth(const Graph& g) {
  // Every BFS level-edge closes an odd walk of length 2d+1; the minimum over
  // all sources is attained on a shortest odd cycle.
  std::optional<std::size_t> best;
  for (std::size_t s = 0; s < g.order(); ++s) {
    auto dist = bfs_distances(g, static_cast<Vertex>(s));
    for (const Edge& e : g.edges()) {
      if (dist[e.u] != kUnreachable && dist[e.u] == dist[e.v]) {
        const std::size_t len = 2 * dist[e.u] + 1;
        if (!best || len < *best) best = len;
      }
    }
  }
  return best;
}

LayeredGraph::LayeredGraph(std::size_t n, std::span<const LayeredEdge> edges, std::size_t layer_count) {
  std::map<Edge, LayerId> lowest;
  LayerId max_layer = 0;
  for (const LayeredEdge& le : edges) {
    if (le.u == le.v) throw GraphError("self-loop at vertex " + std::to_string(le.u));
    const Edge e = make_edge(le.u, le.v);
    max_layer = std::max(max_layer, le.layer);
    auto [it, inserted] = lowest.emplace(e, le.layer);
    if (!inserted) {
      if (it->second == le.layer) {
        warnings_.push_back("duplicate edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            "} in layer " + std::to_string(le.layer) + " ignored");
      } else {
        warnings_.push_back("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            "} appears in layers " + std::to_string(it->second) + " and " +
                            std::to_string(le.layer) + "; kept in layer " +
                            std::to_string(std::min(it->second, le.layer)));
        it->second = std::min(it->second, le.layer);
      }
    }
  }
  std::vector<Edge> flat_edges;
  flat_edges.reserve(lowest.size());
  for (const auto& [e, layer] : lowest) flat_edges.push_back(e);
  flat_ = Graph(n, std::move(flat_edges));
  // std::map iterates in the same (u, v) order the Graph stores edges in.
  layer_of_.reserve(lowest.size());
  for (const auto& [e, layer] : lowest) layer_of_.push_back(layer);
  layer_count_ = std::max<std::size_t>({layer_count, edges.empty() ? 0 : std::size_t{max_layer} + 1, 1});
}

std::optional<LayerId> LayeredGraph::layer_of(Vertex u, Vertex v) const {
  const std::size_t idx = flat_.edge_index(u, v);
  if (idx == kNoEdge) return std::nullopt;
  return layer_of_[idx];
}

Graph LayeredGraph::layer(LayerId id) const {
  if (id >= layer_count_) throw std::out_of_range("unknown layer " + std::to_string(id));
  std::vector<Edge> edges;
  auto all = flat_.edges();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (layer_of_[i] == id) edges.push_back(all[i]);
  }
  return Graph(flat_.order(), std::move(edges));
}

std::vector<LayeredEdge> LayeredGraph::layered_edges() const {
  std::vector<LayeredEdge> out;
  auto all = flat_.edges();
  out.reserve(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) out.push_back({all[i].u, all[i].v, layer_of_[i]});
  return out;
}

LayeredSubgraph remove_vertices(const LayeredGraph& g, std::span<const Vertex> removed) {
  LayeredSubgraph out;
  std::vector<bool> keep(g.order(), true);
  for (Vertex v : removed) {
    if (v >= g.order()) throw std::out_of_range("unknown vertex " + std::to_string(v));
    keep[v] = false;
  }
  out.from_original.assign(g.order(), kNoVertex);
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (keep[v]) {
      out.from_original[v] = static_cast<Vertex>(out.to_original.size());
      out.to_original.push_back(static_cast<Vertex>(v));
    }
  }
  std::vector<LayeredEdge> edges;
  for (const LayeredEdge& e : g.layered_edges()) {
    if (keep[e.u] && keep[e.v]) edges.push_back({out.from_original[e.u], out.from_original[e.v], e.layer});
  }
  out.graph = LayeredGraph(out.to_original.size(), edges, g.layer_count());
  return out;
}

}  // namespace mlmotif
