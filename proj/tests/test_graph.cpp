#include <doctest.h>

#include <algorithm>

#include "mlmotif/graph.hpp"
#include "support/instances.hpp"

using namespace mlmotif;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }
Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v) e.push_back({0, v});
  return Graph(leaves + 1, e);
}
Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 1; v < n; ++v) e.push_back({v - 1, v});
  return Graph(n, e);
}
Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v) e.push_back(make_edge(v, static_cast<Vertex>((v + 1) % n)));
  return Graph(n, e);
}

}  // namespace

TEST_CASE("degree") {
  CHECK(degree(triangle(), 1) == 2);
  CHECK(degree(star(5), 0) == 5);
  CHECK(degree(Graph(3, {{0, 1}}), 2) == 0);
  CHECK_THROWS_AS(degree(triangle(), 3), std::out_of_range);
}

TEST_CASE("construction rejects loops, repeats and unknown endpoints") {
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), GraphError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), GraphError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), GraphError);
}

TEST_CASE("adjacency is symmetric and sorted") {
  fixtures::Rng rng(11);
  for (int round = 0; round < 30; ++round) {
    const Graph g = fixtures::random_graph(rng, 12, 0.3);
    std::size_t degree_sum = 0;
    for (Vertex v = 0; v < g.order(); ++v) {
      auto nb = g.neighbors(v);
      CHECK(std::is_sorted(nb.begin(), nb.end()));
      degree_sum += nb.size();
      for (Vertex w : nb) CHECK(g.adjacent(w, v));
    }
    CHECK(degree_sum == 2 * g.size());
    for (const Edge& e : g.edges()) CHECK(g.edge_index(e.u, e.v) < g.size());
  }
}

TEST_CASE("remove_vertices") {
  const Subgraph k2 = remove_vertices(triangle(), std::vector<Vertex>{1});
  CHECK(k2.graph.order() == 2);
  CHECK(k2.graph.size() == 1);
  CHECK(k2.to_original == std::vector<Vertex>{0, 2});
  CHECK(k2.from_original[1] == kNoVertex);

  const Subgraph leaves = remove_vertices(star(5), std::vector<Vertex>{0});
  CHECK(leaves.graph.order() == 5);
  CHECK(leaves.graph.size() == 0);

  const Graph g = cycle(6);
  const Subgraph same = remove_vertices(g, std::vector<Vertex>{});
  CHECK(std::equal(same.graph.edges().begin(), same.graph.edges().end(), g.edges().begin(), g.edges().end()));
}

TEST_CASE("distance") {
  const Graph p = path(3);
  CHECK(distance(p, 0, 2) == 2u);
  CHECK(distance(p, 1, 1) == 0u);
  CHECK_FALSE(distance(Graph(4, {{0, 1}, {2, 3}}), 0, 3).has_value());
}

TEST_CASE("distance obeys the triangle inequality") {
  fixtures::Rng rng(5);
  for (int round = 0; round < 20; ++round) {
    const Graph g = fixtures::random_graph(rng, 8, 0.35);
    for (Vertex a = 0; a < 8; ++a) {
      const auto da = bfs_distances(g, a);
      for (Vertex b = 0; b < 8; ++b) {
        const auto db = bfs_distances(g, b);
        for (Vertex c = 0; c < 8; ++c) {
          if (da[b] == kUnreachable || db[c] == kUnreachable) continue;
          CHECK(da[c] <= da[b] + db[c]);
        }
      }
    }
  }
}

TEST_CASE("bipartiteness with witness") {
  CHECK(is_bipartite(cycle(4)));
  CHECK_FALSE(is_bipartite(triangle()));
  CHECK(is_bipartite(Graph(0)));
  fixtures::Rng rng(3);
  for (int round = 0; round < 40; ++round) {
    const Graph g = fixtures::random_graph(rng, 10, 0.2);
    if (auto colors = two_coloring(g)) {
      for (const Edge& e : g.edges()) CHECK((*colors)[e.u] != (*colors)[e.v]);
    } else {
      CHECK(odd_girth(g).has_value());
    }
  }
}

TEST_CASE("star forests and matchings") {
  CHECK(is_star_forest(Graph(7, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {5, 6}})));
  CHECK_FALSE(is_star_forest(path(4)));
  CHECK_FALSE(is_star_forest(triangle()));
  CHECK(is_star_forest(Graph(3)));
  CHECK(is_matching(Graph(6, {{0, 1}, {2, 3}, {4, 5}})));
  CHECK_FALSE(is_matching(path(3)));
  CHECK(is_matching(Graph(4)));
}

TEST_CASE("odd girth and diameter") {
  CHECK(odd_girth(cycle(7)) == 7u);
  CHECK_FALSE(odd_girth(cycle(8)).has_value());
  CHECK(odd_girth(triangle()) == 3u);
  CHECK(diameter(path(5)) == 4u);
  CHECK_FALSE(diameter(Graph(2)).has_value());
  CHECK(diameter(Graph(1)) == 0u);
}

TEST_CASE("layered graph keeps one layer per pair") {
  const std::vector<LayeredEdge> edges{{0, 1, 1}, {1, 0, 0}, {1, 2, 1}};
  const LayeredGraph g(3, edges);
  CHECK(g.flat().size() == 2);
  CHECK(g.layer_count() == 2);
  CHECK(g.layer_of(0, 1) == LayerId{0});
  CHECK(g.layer_of(2, 1) == LayerId{1});
  CHECK(g.warnings().size() == 1);
  CHECK(g.layer(0).size() + g.layer(1).size() == g.flat().size());
  CHECK(g.layer(1).order() == 3);
}

TEST_CASE("layered removal keeps layer ids") {
  const std::vector<LayeredEdge> edges{{0, 1, 0}, {1, 2, 2}, {2, 3, 1}};
  const LayeredGraph g(4, edges, 3);
  const LayeredSubgraph sub = remove_vertices(g, std::vector<Vertex>{0});
  CHECK(sub.graph.layer_count() == 3);
  CHECK(sub.graph.layer_of(0, 1) == LayerId{2});
  CHECK(sub.graph.layer_of(1, 2) == LayerId{1});
  CHECK(sub.graph.layer(0).size() == 0);
}
