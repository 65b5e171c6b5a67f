#include <doctest.h>

#include "mlmotif/exact_counters.hpp"
#include "mlmotif/oracle.hpp"
#include "support/instances.hpp"
#include "support/naive.hpp"

using namespace mlmotif;

namespace {

LayeredGraph single_layer(const Graph& g) {
  std::vector<LayeredEdge> edges;
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, 0});
  return LayeredGraph(g.order(), edges);
}

Pattern k2() { return Pattern(Graph(2, {{0, 1}})); }

}  // namespace

TEST_CASE("bounded-degree examples") {
  CHECK(count_bounded_degree(Graph(3, {{0, 1}, {1, 2}, {0, 2}}), k2()) == 6);
  const Graph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  CHECK(count_bounded_degree(c5, Pattern(Graph(3, {{0, 1}, {1, 2}}))) == naive::count(c5, Pattern(Graph(3, {{0, 1}, {1, 2}}))));
  CHECK(count_bounded_degree(Graph(6), Pattern(Graph(3, {{0, 2}}))) == 0);
}

TEST_CASE("bounded-degree search with several threads gives the same count") {
  fixtures::Rng rng(31);
  for (int round = 0; round < 20; ++round) {
    const Graph host = fixtures::random_graph(rng, 18, 0.3);
    const Pattern pat = fixtures::random_pattern(rng, 4, 18, 0.4, fixtures::coin(rng, 0.7));
    const Count one = count_bounded_degree(host, pat, 1);
    CHECK(count_bounded_degree(host, pat, 3) == one);
    CHECK(one == count_embeddings_oracle(host, pat));
  }
}

TEST_CASE("find_embedding returns a valid witness") {
  fixtures::Rng rng(32);
  for (int round = 0; round < 60; ++round) {
    const Graph host = fixtures::random_graph(rng, 10, 0.3);
    const Pattern pat = fixtures::random_pattern(rng, fixtures::pick(rng, 1, 4), 10, 0.5, fixtures::coin(rng, 0.5));
    const auto emb = find_embedding(host, pat);
    CHECK(emb.has_value() == exists_embedding_oracle(host, pat));
    if (emb) CHECK(is_embedding(host, pat, *emb));
  }
}

TEST_CASE("vc-layer examples") {
  {
    const std::vector<LayeredEdge> edges{{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}};
    const LayeredGraph star(5, edges, 2);
    VcLayerStats stats;
    CHECK(count_vc_layer(star, nullptr, k2(), 1, CountStrategy::of(Method::oracle), &stats) == 8);
    CHECK(stats.cover == std::vector<Vertex>{0});
  }
  {
    const std::vector<LayeredEdge> edges{{0, 1, 0}, {1, 2, 0}, {0, 2, 1}};
    const LayeredGraph tri(3, edges, 2);
    VcLayerStats stats;
    CHECK(count_vc_layer(tri, nullptr, Pattern(Graph(3, {{0, 1}, {1, 2}, {0, 2}})), 1,
                         CountStrategy::of(Method::bounded_degree), &stats) == 6);
    CHECK(stats.cover.size() == 1);
  }
}

TEST_CASE("vc-layer agrees with the oracle and respects its budget") {
  fixtures::Rng rng(33);
  for (int round = 0; round < 120; ++round) {
    const std::size_t n = fixtures::pick(rng, 1, 15);
    const std::size_t layers = fixtures::pick(rng, 1, 3);
    const LayeredGraph host = fixtures::random_layered(rng, n, layers, 0.3);
    const Pattern pat = fixtures::random_pattern(rng, fixtures::pick(rng, 1, 4), n, 0.4, fixtures::coin(rng, 0.5));
    const Count expected = naive::count(host.flat(), pat);
    for (LayerId l = 0; l < layers; ++l) {
      VcLayerStats stats;
      CHECK(count_vc_layer(host, nullptr, pat, l, CountStrategy::of(Method::bounded_degree), &stats) == expected);
      CHECK(Count(stats.inner_calls) <= stats.call_budget);
      CHECK(stats.dirty_inner_calls == 0);
      if (layers > 1) {
        const LayerId other = (l + 1) % layers;
        const CountStrategy nested = CountStrategy::vc_layer(other, CountStrategy::of(Method::oracle));
        CHECK(count_vc_layer(host, nullptr, pat, l, nested) == expected);
      }
    }
  }
}

TEST_CASE("dispatch") {
  fixtures::Rng rng(34);
  for (int round = 0; round < 60; ++round) {
    const Graph g = fixtures::random_graph(rng, 14, 0.2);
    const LayeredGraph host = single_layer(g);
    const Pattern pat = fixtures::random_pattern(rng, fixtures::pick(rng, 1, 4), 14, 0.5, true);
    const Count expected = naive::count(g, pat);
    DispatchReport report;
    CHECK(count_dispatch(host, nullptr, pat, CountStrategy::of(Method::automatic), &report) == expected);
    CHECK_FALSE(report.resolved.empty());
    CHECK(count_dispatch(host, nullptr, pat, CountStrategy::of(Method::oracle)) == expected);
  }
}

TEST_CASE("strategy errors") {
  const std::vector<LayeredEdge> edges{{0, 1, 0}, {2, 3, 0}, {4, 5, 0}};
  const LayeredGraph matching(6, edges);
  CountOptions tight;
  tight.cover_guard = 2;
  CHECK_THROWS_AS(count_dispatch(matching, nullptr, k2(), CountStrategy::vc_layer(0, CountStrategy::of(Method::oracle)),
                                 nullptr, tight),
                  StrategyInfeasible);
  CHECK_THROWS_AS(count_dispatch(matching, nullptr, k2(), CountStrategy::of(Method::geometric)), StrategyInfeasible);
  CHECK_THROWS_AS(count_vc_layer(matching, nullptr, k2(), 3, CountStrategy::of(Method::oracle)), std::invalid_argument);
  const CountStrategy loop = CountStrategy::vc_layer(0, CountStrategy::vc_layer(0, CountStrategy::of(Method::oracle)));
  CHECK_THROWS_AS(count_dispatch(matching, nullptr, k2(), loop), std::invalid_argument);
}

TEST_CASE("edgeless pattern gives the falling factorial for every strategy") {
  fixtures::Rng rng(35);
  for (std::size_t n = 1; n <= 9; ++n) {
    const LayeredGraph host = fixtures::random_layered(rng, n, 2, 0.3);
    for (std::size_t k = 1; k <= 4; ++k) {
      const Pattern pat{Graph(k)};
      const Count want = falling_factorial(n, k);
      CHECK(count_dispatch(host, nullptr, pat, CountStrategy::of(Method::oracle)) == want);
      CHECK(count_dispatch(host, nullptr, pat, CountStrategy::of(Method::bounded_degree)) == want);
      CHECK(count_dispatch(host, nullptr, pat, CountStrategy::vc_layer(0, CountStrategy::of(Method::automatic))) == want);
      CHECK(count_dispatch(host, nullptr, pat, CountStrategy::of(Method::automatic)) == want);
    }
  }
}

TEST_CASE("method names round trip") {
  for (Method m : {Method::oracle, Method::bounded_degree, Method::vc_layer, Method::geometric, Method::automatic}) {
    CHECK(parse_method(method_name(m)) == m);
  }
  CHECK_FALSE(parse_method("quantum").has_value());
  CHECK(CountStrategy::vc_layer(1, CountStrategy::of(Method::oracle)).describe() == "vc-layer(1)>oracle");
}
