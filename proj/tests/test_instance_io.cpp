#include <doctest.h>

#include <algorithm>
#include <optional>
#include <tuple>

#include "mlmotif/instance_io.hpp"
#include "support/instances.hpp"

using namespace mlmotif;

namespace {

// Edges with their layer written as the raw label from the file.
std::vector<std::tuple<Vertex, Vertex, LayerId>> triples(const LayeredGraph& g, const std::vector<LayerId>* labels = nullptr) {
  std::vector<std::tuple<Vertex, Vertex, LayerId>> out;
  for (const LayeredEdge& e : g.layered_edges()) out.emplace_back(e.u, e.v, labels ? (*labels)[e.layer] : e.layer);
  return out;
}

bool same_edges(const Graph& a, const Graph& b) {
  return a.order() == b.order() && std::equal(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end());
}

std::optional<std::size_t> error_line(std::string_view text) {
  try {
    parse_host(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("host examples") {
  const HostInstance h = parse_host("e 0 1 0\ne 1 2 1");
  CHECK(h.graph.order() == 3);
  CHECK(h.graph.flat().size() == 2);
  CHECK(h.graph.layer_count() == 2);
  CHECK_FALSE(h.layout.has_value());

  const HostInstance dup = parse_host("e 0 1 0\ne 0 1 0\n");
  CHECK(dup.graph.flat().size() == 1);
  CHECK_FALSE(dup.graph.warnings().empty());

  CHECK_THROWS_AS(parse_host("e 0 0 0"), ParseError);
  CHECK(error_line("# comment\ne 0 0 0") == std::size_t{2});
}

TEST_CASE("host records") {
  const HostInstance h = parse_host("n 5\n# layers 7 and 3\ne 0 1 7\ne 1 2 3\ne 3 4\n");
  CHECK(h.graph.order() == 5);
  CHECK(h.graph.layer_count() == 3);
  CHECK(h.layer_labels == std::vector<LayerId>{0, 3, 7});
  CHECK(h.graph.layer_of(0, 1) == LayerId{2});
  CHECK(h.graph.layer_of(3, 4) == LayerId{0});

  const HostInstance geo = parse_host("e 0 1\npos 0 0.5 -1\npos 1 1/3 2e1\n");
  REQUIRE(geo.layout);
  CHECK(geo.layout->positions[0] == Point{Rational(1, 2), Rational(-1)});
  CHECK(geo.layout->positions[1] == Point{Rational(1, 3), Rational(20)});

  CHECK(error_line("n 2\ne 0 2") == std::size_t{2});
  CHECK(error_line("e 0 1\npos 0 0 0").has_value());
  CHECK(error_line("e 0 1\nq 1") == std::size_t{2});
  CHECK(error_line("e 0 x") == std::size_t{1});
  CHECK(error_line("e 0 1\npos 0 0 0\npos 0 1 1\npos 1 0 0") == std::size_t{3});
}

TEST_CASE("pattern examples") {
  const Pattern k2 = parse_pattern("k 2\ne 0 1", 5);
  CHECK(k2.size() == 2);
  CHECK(k2.graph.adjacent(0, 1));
  CHECK(k2.unrestricted());

  const Pattern listed = parse_pattern("k 2\ne 0 1\nlist 0 3", 5);
  CHECK(listed.lists[0] == std::vector<Vertex>{3});
  CHECK_FALSE(listed.lists[1].has_value());

  CHECK_THROWS_AS(parse_pattern("k 2\nlist 0 99", 5), ParseError);
  CHECK_THROWS_AS(parse_pattern("k 0", 5), ParseError);
  CHECK_THROWS_AS(parse_pattern("e 0 1", 5), ParseError);
  CHECK_THROWS_AS(parse_pattern("k 2\ne 0 2", 5), ParseError);
  CHECK_THROWS_AS(parse_pattern("k 2\nlist 0 1\nlist 0 2", 5), ParseError);
  CHECK(parse_pattern("k 2\ne 0 1\ne 1 0", 5).graph.size() == 1);
}

TEST_CASE("clique instance examples") {
  const CliqueInstance tri = parse_clique_instance("color 0 1\ncolor 1 2\ncolor 2 3\ne 0 1\ne 1 2\ne 0 2\n");
  CHECK(tri.k == 3);
  CHECK(tri.color == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(tri.graph.size() == 3);

  CHECK_THROWS_AS(parse_clique_instance("n 3\ncolor 0 1\ncolor 1 2\ne 0 1"), ParseError);
  CHECK_THROWS_AS(parse_clique_instance("color 0 1\ncolor 1 3\ne 0 1"), ParseError);
  CHECK_THROWS_AS(parse_clique_instance("color 0 1\ncolor 0 2\ncolor 1 2"), ParseError);
}

TEST_CASE("exact coordinates") {
  CHECK(exact_text(Rational(5, 2)) == "2.5");
  CHECK(exact_text(Rational(-3)) == "-3");
  CHECK(exact_text(Rational(1, 3)) == "1/3");
  CHECK(exact_text(Rational(7, 40)) == "0.175");
}

TEST_CASE("round trips") {
  fixtures::Rng rng(71);
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = fixtures::pick(rng, 1, 20);
    const LayeredGraph g = fixtures::random_layered(rng, n, fixtures::pick(rng, 1, 3), 0.3);
    const GeometricLayout layout = fixtures::random_layout(rng, n);
    const bool with_layout = fixtures::coin(rng, 0.5);

    const HostInstance back = parse_host(serialize_host(g, with_layout ? &layout : nullptr));
    CHECK(back.graph.order() == g.order());
    CHECK(triples(back.graph, &back.layer_labels) == triples(g));
    CHECK(back.layout.has_value() == with_layout);
    if (with_layout) CHECK(back.layout->positions == layout.positions);

    const Pattern pat = fixtures::random_pattern(rng, fixtures::pick(rng, 1, 4), n, 0.5, false);
    const Pattern pat_back = parse_pattern(serialize_pattern(pat), n);
    CHECK(same_edges(pat_back.graph, pat.graph));
    CHECK(pat_back.lists == pat.lists);

    const CliqueInstance inst = fixtures::random_clique_instance(rng, fixtures::pick(rng, 2, 4), 3, 0.5);
    const CliqueInstance inst_back = parse_clique_instance(serialize_clique_instance(inst));
    CHECK(inst_back.k == inst.k);
    CHECK(inst_back.color == inst.color);
    CHECK(same_edges(inst_back.graph, inst.graph));
  }
}

TEST_CASE("outputs") {
  const nlohmann::json j = result_json(Count(1) << 70, "oracle", {{"x", 1}});
  CHECK(j["count"] == "1180591620717411303424");
  CHECK(j["method"] == "oracle");
  CHECK(j["stats"]["x"] == 1);

  PeelTrace t;
  t.records.push_back({1, 0, 0});
  CHECK(peel_csv(t) == "step,removed_vertex,max_degree\n1,0,0\n");
  CHECK_THROWS_AS(read_text_file("/nonexistent/file"), std::runtime_error);
}
