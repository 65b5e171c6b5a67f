#include <doctest.h>

#include <algorithm>
#include <set>

#include "mlmotif/exact_counters.hpp"
#include "mlmotif/gadgets.hpp"
#include "support/instances.hpp"

using namespace mlmotif;

namespace {

CliqueInstance single_edge() {
  CliqueInstance inst;
  inst.k = 2;
  inst.color = {0, 1};
  inst.graph = Graph(2, {{0, 1}});
  return inst;
}

CliqueInstance rainbow_triangle() {
  CliqueInstance inst;
  inst.k = 3;
  inst.color = {0, 1, 2};
  inst.graph = Graph(3, {{0, 1}, {1, 2}, {0, 2}});
  return inst;
}

// Replaces the closing edge of the first host cycle with a path through two new vertices.
GadgetHost lengthen_first_cycle(GadgetHost host) {
  DecorationCycle& c = host.cycles.front();
  const Vertex last = c.path.back();
  const Vertex a = static_cast<Vertex>(host.graph.order());
  const Vertex b = a + 1;
  std::vector<LayeredEdge> edges;
  for (const LayeredEdge& e : host.graph.layered_edges()) {
    const bool closing = (e.u == last && e.v == c.attach) || (e.v == last && e.u == c.attach);
    if (!closing) edges.push_back(e);
  }
  edges.push_back({last, a, 1});
  edges.push_back({a, b, 0});
  edges.push_back({b, c.attach, 1});
  c.path.push_back(a);
  c.path.push_back(b);
  host.graph = LayeredGraph(b + 1, edges, 2);
  return host;
}

// Moves the first matching edge whose endpoints both touch the star forest into it.
GadgetHost move_matching_edge(GadgetHost host) {
  const Graph e1 = host.graph.layer(0);
  std::vector<LayeredEdge> edges = host.graph.layered_edges();
  for (LayeredEdge& e : edges) {
    if (e.layer == 1 && e1.degree(e.u) > 0 && e1.degree(e.v) > 0) {
      e.layer = 0;
      break;
    }
  }
  host.graph = LayeredGraph(host.graph.order(), edges, 2);
  return host;
}

}  // namespace

TEST_CASE("pair list is lexicographic") {
  using P = std::pair<std::uint32_t, std::uint32_t>;
  CHECK(pair_list(3) == std::vector<P>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(pair_list(4).size() == 6);
  CHECK(pair_list(4)[3] == P{1, 2});
}

TEST_CASE("pattern sizes") {
  const GadgetPattern p3 = build_pattern(3);
  CHECK(p3.base_order == 54);
  CHECK(p3.graph.order() == 144);
  const GadgetPattern p2 = build_pattern(2);
  CHECK(p2.base_order == 12);
  CHECK(p2.graph.order() == 18);
  std::multiset<std::size_t> lengths;
  for (const auto& c : p2.cycles) lengths.insert(c.length());
  CHECK(lengths == std::multiset<std::size_t>{3, 5});
  CHECK(decoration_length(3, 3, 3) == 19);
  CHECK_THROWS_AS(build_pattern(1), std::invalid_argument);
}

TEST_CASE("pattern anchors and cross edges") {
  const GadgetPattern p = build_pattern(3);
  CHECK(p.anchor[1][2] == p.path_vertex(2, 18));
  // Pair {1,3} is second in the list, so the cross edge sits at position 9.
  CHECK(p.graph.adjacent(p.path_vertex(1, 9), p.path_vertex(3, 9)));
  CHECK_FALSE(p.graph.adjacent(p.path_vertex(1, 9), p.path_vertex(2, 9)));
  for (const auto& c : p.cycles) CHECK(c.attach == p.anchor[c.cls - 1][c.block - 1]);
}

TEST_CASE("rainbow triangle host") {
  const CliqueInstance inst = rainbow_triangle();
  const GadgetHost host = build_host(inst);
  CHECK(host.base_order == 99);
  CHECK(expected_host_base_order(inst) == 99);
  CHECK(is_star_forest(host.graph.layer(0)));
  CHECK(is_matching(host.graph.layer(1)));

  const GadgetPattern pat = build_pattern(3);
  const Embedding emb = clique_to_embedding(inst, {0, 1, 2}, host, pat);
  CHECK(emb.image.size() == 144);
  CHECK(is_embedding(host.graph.flat(), Pattern(pat.graph), emb));
}

TEST_CASE("k=2 gadget passes every check") {
  const CliqueInstance inst = single_edge();
  const GadgetHost host = build_host(inst);
  const GadgetPattern pat = build_pattern(2);
  const GadgetReport report = validate_gadget(host, pat);
  for (const auto& c : report.checks) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.ok);
  }
  const Embedding emb = clique_to_embedding(inst, {0, 1}, host, pat);
  CHECK(emb.image.size() == 18);
  CHECK(is_embedding(host.graph.flat(), Pattern(pat.graph), emb));
}

TEST_CASE("injected faults are reported") {
  const GadgetHost host = build_host(single_edge());
  const GadgetPattern pat = build_pattern(2);

  const GadgetReport longer = validate_gadget(lengthen_first_cycle(host), pat);
  REQUIRE(longer.find("decoration_cycles"));
  CHECK_FALSE(longer.find("decoration_cycles")->ok);

  const GadgetReport moved = validate_gadget(move_matching_edge(host), pat);
  REQUIRE(moved.find("e1_star_forest"));
  CHECK_FALSE(moved.find("e1_star_forest")->ok);
  CHECK(moved.find("e2_matching")->ok);
}

TEST_CASE("a host built from an odd cycle of classes is not bipartite") {
  const GadgetReport report = validate_gadget(build_host(rainbow_triangle()), build_pattern(3));
  CHECK_FALSE(report.find("undecorated_bipartite")->ok);
  CHECK(report.find("undecorated_odd_girth")->ok);
}

TEST_CASE("clique_to_embedding rejects non-cliques") {
  CliqueInstance inst = rainbow_triangle();
  inst.graph = Graph(3, {{0, 1}, {1, 2}});
  const GadgetHost host = build_host(inst);
  CHECK_THROWS_AS(clique_to_embedding(inst, {0, 1, 2}, host, build_pattern(3)), std::invalid_argument);
  CHECK_THROWS_AS(clique_to_embedding(inst, {1, 0, 2}, host, build_pattern(3)), std::invalid_argument);
}

TEST_CASE("instance validation") {
  CliqueInstance inst = single_edge();
  inst.k = 3;
  CHECK_THROWS_AS(validate_clique_instance(inst), std::invalid_argument);
  inst = single_edge();
  inst.color = {0, 2};
  CHECK_THROWS_AS(validate_clique_instance(inst), std::invalid_argument);
  inst.k = 1;
  CHECK_THROWS_AS(validate_clique_instance(inst), std::invalid_argument);
}

TEST_CASE("formulas and layers on random instances") {
  fixtures::Rng rng(61);
  for (std::size_t k = 2; k <= 4; ++k) {
    for (int round = 0; round < 6; ++round) {
      const CliqueInstance inst = fixtures::random_clique_instance(rng, k, 3, 0.5);
      const GadgetHost host = build_host(inst);
      const GadgetPattern pat = build_pattern(k);
      const GadgetReport report = validate_gadget(host, pat);
      for (const char* name : {"pattern_order", "host_order", "decoration_cycles", "anchor_distances",
                               "layer_partition", "e1_star_forest", "e2_matching"}) {
        INFO(std::string(name) << ": " << report.find(name)->detail);
        CHECK(report.find(name)->ok);
      }
      CHECK(report.find("undecorated_bipartite")->ok == is_bipartite(inst.graph));
      // From k = 4 on, odd cycles through three classes can be shorter than the longest decoration.
      if (k <= 3) CHECK(report.find("undecorated_odd_girth")->ok);
    }
  }
}

TEST_CASE("k=2 witnesses from cross edges") {
  fixtures::Rng rng(62);
  const GadgetPattern pat = build_pattern(2);
  for (int round = 0; round < 20; ++round) {
    const CliqueInstance inst = fixtures::random_clique_instance(rng, 2, 4, 0.4);
    const GadgetHost host = build_host(inst);
    for (const Edge& e : inst.graph.edges()) {
      std::vector<Vertex> pick{e.u, e.v};
      if (inst.color[e.u] != 0) std::swap(pick[0], pick[1]);
      CHECK(is_embedding(host.graph.flat(), Pattern(pat.graph), clique_to_embedding(inst, pick, host, pat)));
    }
    if (inst.graph.edges().empty()) CHECK_FALSE(exists_embedding(host.graph.flat(), Pattern(pat.graph)));
  }
}
