#include "mlmotif/gadgets.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mlmotif {

namespace {

std::size_t choose2(std::size_t k) { return k * (k - 1) / 2; }

// Incident edges of v in G', by edge index.
std::vector<std::size_t> incident_edges(const Graph& g, Vertex v) {
  std::vector<std::size_t> out;
  for (Vertex w : g.neighbors(v)) out.push_back(g.edge_index(v, w));
  std::sort(out.begin(), out.end());
  return out;
}

Graph first_vertices(const Graph& g, std::size_t count) {
  std::vector<Vertex> kept(count);
  std::iota(kept.begin(), kept.end(), Vertex{0});
  return induced_subgraph(g, kept).graph;
}

// Appends the edges of a cycle of 2m+1 edges through `attach`; edge t (from 1
// at attach) lands in layer 1 when t is even.
DecorationCycle hang_cycle(std::size_t cls, std::size_t block, Vertex attach, std::size_t m, Vertex& next,
                           std::vector<LayeredEdge>& edges) {
  DecorationCycle c{cls, block, attach, {}};
  for (std::size_t t = 0; t < 2 * m; ++t) c.path.push_back(next++);
  Vertex prev = attach;
  for (std::size_t t = 0; t < c.path.size(); ++t) {
    edges.push_back({prev, c.path[t], static_cast<LayerId>((t + 1) % 2 == 0 ? 1 : 0)});
    prev = c.path[t];
  }
  edges.push_back({prev, attach, 0});
  return c;
}

bool cycle_intact(const Graph& g, const DecorationCycle& c) {
  if (c.path.empty()) return false;
  Vertex prev = c.attach;
  for (Vertex x : c.path) {
    if (x >= g.order() || !g.adjacent(prev, x) || g.degree(x) != 2) return false;
    prev = x;
  }
  return g.adjacent(prev, c.attach);
}

std::string cycle_name(const DecorationCycle& c) {
  return "(" + std::to_string(c.cls) + "," + std::to_string(c.block) + ")";
}

}  // namespace

std::vector<Vertex> CliqueInstance::members(std::uint32_t cls) const {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < color.size(); ++v) {
    if (color[v] == cls) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

void validate_clique_instance(const CliqueInstance& inst) {
  if (inst.k < 2) throw std::invalid_argument("a clique instance needs at least two classes");
  if (inst.color.size() != inst.graph.order()) throw std::invalid_argument("every vertex needs exactly one colour");
  std::vector<char> seen(inst.k, 0);
  for (std::uint32_t c : inst.color) {
    if (c >= inst.k) throw std::invalid_argument("colour " + std::to_string(c + 1) + " exceeds k");
    seen[c] = 1;
  }
  for (std::size_t c = 0; c < inst.k; ++c) {
    if (!seen[c]) throw std::invalid_argument("colour class " + std::to_string(c + 1) + " is empty");
  }
}

bool is_multicolour_clique(const CliqueInstance& inst, const std::vector<Vertex>& pick) {
  if (pick.size() != inst.k) return false;
  for (std::size_t i = 0; i < pick.size(); ++i) {
    if (pick[i] >= inst.graph.order() || inst.color[pick[i]] != i) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (!inst.graph.adjacent(pick[i], pick[j])) return false;
    }
  }
  return true;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> pair_list(std::size_t k) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t i = 0; i < k; ++i) {
    for (std::uint32_t j = i + 1; j < k; ++j) out.emplace_back(i, j);
  }
  return out;
}

std::size_t decoration_length(std::size_t k, std::size_t cls, std::size_t block) {
  return 2 * ((cls - 1) * choose2(k) + block) + 1;
}

GadgetPattern build_pattern(std::size_t k) {
  if (k < 2) throw std::invalid_argument("gadget pattern needs k >= 2");
  GadgetPattern pat;
  pat.k = k;
  pat.pairs = choose2(k);
  const std::size_t path_len = 6 * pat.pairs;
  pat.base_order = k * path_len;

  std::vector<LayeredEdge> edges;
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t p = 1; p < path_len; ++p) edges.push_back({pat.path_vertex(i, p), pat.path_vertex(i, p + 1), 0});
  }
  const auto pairs = pair_list(k);
  for (std::size_t l = 1; l <= pairs.size(); ++l) {
    const std::size_t pos = 6 * (l - 1) + 3;
    edges.push_back({pat.path_vertex(pairs[l - 1].first + 1, pos), pat.path_vertex(pairs[l - 1].second + 1, pos), 0});
  }
  pat.anchor.assign(k, std::vector<Vertex>(pat.pairs));
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = 1; j <= pat.pairs; ++j) pat.anchor[i - 1][j - 1] = pat.path_vertex(i, 6 * j);
  }

  Vertex next = static_cast<Vertex>(pat.base_order);
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = 1; j <= pat.pairs; ++j) {
      const std::size_t m = (i - 1) * pat.pairs + j;
      pat.cycles.push_back(hang_cycle(i, j, pat.anchor[i - 1][j - 1], m, next, edges));
    }
  }

  std::vector<Edge> plain;
  plain.reserve(edges.size());
  for (const LayeredEdge& e : edges) plain.push_back({e.u, e.v});
  pat.graph = Graph(next, std::move(plain));
  return pat;
}

std::size_t expected_host_base_order(const CliqueInstance& inst) {
  std::size_t per_block = 0;
  for (std::size_t v = 0; v < inst.graph.order(); ++v) per_block += 1 + 5 * inst.graph.degree(static_cast<Vertex>(v));
  return choose2(inst.k) * per_block;
}

GadgetHost build_host(const CliqueInstance& inst) {
  validate_clique_instance(inst);
  const Graph& g = inst.graph;
  GadgetHost host;
  host.instance = inst;
  host.pairs = choose2(inst.k);
  host.anchor.assign(g.order(), std::vector<Vertex>(host.pairs, kNoVertex));

  std::vector<std::vector<std::size_t>> incident(g.order());
  for (std::size_t v = 0; v < g.order(); ++v) incident[v] = incident_edges(g, static_cast<Vertex>(v));

  // Blocks W_{i,j}: anchors and paths, allocated block by block.
  Vertex next = 0;
  for (std::uint32_t i = 0; i < inst.k; ++i) {
    const auto members = inst.members(i);
    for (std::size_t j = 1; j <= host.pairs; ++j) {
      for (Vertex v : members) {
        host.anchor[v][j - 1] = next++;
        for (std::size_t e : incident[v]) {
          host.path_start[{v, e, j}] = next;
          next += 5;
        }
      }
    }
  }
  host.base_order = next;

  std::vector<LayeredEdge> edges;
  for (const auto& [key, start] : host.path_start) {
    const auto& [v, e, j] = key;
    edges.push_back({start, start + 1, 1});
    edges.push_back({start + 1, start + 2, 0});
    edges.push_back({start + 2, start + 3, 0});
    edges.push_back({start + 3, start + 4, 1});
    edges.push_back({start + 4, host.anchor[v][j - 1], 0});
    if (j >= 2) edges.push_back({start, host.anchor[v][j - 2], 0});
  }
  const auto pairs = pair_list(inst.k);
  for (std::size_t j = 1; j <= host.pairs; ++j) {
    const auto [r, s] = pairs[j - 1];
    for (std::size_t e = 0; e < g.size(); ++e) {
      const Edge& uv = g.edges()[e];
      const auto cu = inst.color[uv.u];
      const auto cv = inst.color[uv.v];
      if (!((cu == r && cv == s) || (cu == s && cv == r))) continue;
      edges.push_back({host.path_start.at({uv.u, e, j}) + 2, host.path_start.at({uv.v, e, j}) + 2, 1});
    }
  }

  for (std::uint32_t i = 0; i < inst.k; ++i) {
    const auto members = inst.members(i);
    for (std::size_t j = 1; j <= host.pairs; ++j) {
      const std::size_t m = i * host.pairs + j;
      for (Vertex v : members) host.cycles.push_back(hang_cycle(i + 1, j, host.anchor[v][j - 1], m, next, edges));
    }
  }

  host.graph = LayeredGraph(next, edges, 2);
  return host;
}

Graph undecorated(const GadgetHost& host) { return first_vertices(host.graph.flat(), host.base_order); }
Graph undecorated(const GadgetPattern& pat) { return first_vertices(pat.graph, pat.base_order); }

Embedding clique_to_embedding(const CliqueInstance& inst, const std::vector<Vertex>& pick, const GadgetHost& host,
                              const GadgetPattern& pat) {
  validate_clique_instance(inst);
  if (pat.k != inst.k) throw std::invalid_argument("pattern and instance disagree on k");
  if (!is_multicolour_clique(inst, pick)) throw std::invalid_argument("the chosen vertices are not a multicolour clique");

  const Graph& g = inst.graph;
  const auto pairs = pair_list(inst.k);
  Embedding emb;
  emb.image.assign(pat.graph.order(), kNoVertex);

  for (std::size_t i = 1; i <= inst.k; ++i) {
    const Vertex w = pick[i - 1];
    const std::size_t fallback = incident_edges(g, w).front();  // k >= 2, so w has a clique edge
    for (std::size_t j = 1; j <= pat.pairs; ++j) {
      const auto [r, s] = pairs[j - 1];
      std::size_t e = fallback;
      if (r == i - 1) e = g.edge_index(w, pick[s]);
      if (s == i - 1) e = g.edge_index(w, pick[r]);
      const Vertex start = host.path_start.at({w, e, j});
      for (std::size_t t = 1; t <= 5; ++t) emb.image[pat.path_vertex(i, 6 * (j - 1) + t)] = start + t - 1;
      emb.image[pat.path_vertex(i, 6 * j)] = host.anchor[w][j - 1];
    }
  }

  std::map<Vertex, const DecorationCycle*> host_cycle;
  for (const DecorationCycle& c : host.cycles) host_cycle[c.attach] = &c;
  for (const DecorationCycle& c : pat.cycles) {
    const DecorationCycle& target = *host_cycle.at(emb.image[c.attach]);
    for (std::size_t t = 0; t < c.path.size(); ++t) emb.image[c.path[t]] = target.path.at(t);
  }
  return emb;
}

bool GadgetReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const GadgetCheck& c) { return c.ok; });
}

const GadgetCheck* GadgetReport::find(const std::string& name) const {
  for (const GadgetCheck& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

GadgetReport validate_gadget(const GadgetHost& host, const GadgetPattern& pat) {
  if (host.instance.k != pat.k) throw std::invalid_argument("host and pattern disagree on k");
  const std::size_t k = pat.k;
  const Graph& flat = host.graph.flat();
  GadgetReport report;
  auto add = [&report](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  {
    std::size_t decorations = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      for (std::size_t j = 1; j <= pat.pairs; ++j) decorations += decoration_length(k, i, j) - 1;
    }
    const std::size_t expected = 6 * k * choose2(k);
    std::ostringstream d;
    d << "base " << pat.base_order << " (expected " << expected << "), total " << pat.graph.order() << " (expected "
      << expected + decorations << ")";
    add("pattern_order", pat.base_order == expected && pat.graph.order() == expected + decorations, d.str());
  }
  {
    std::size_t decorations = 0;
    for (std::size_t v = 0; v < host.instance.graph.order(); ++v) {
      for (std::size_t j = 1; j <= host.pairs; ++j) {
        decorations += decoration_length(k, host.instance.color[v] + 1, j) - 1;
      }
    }
    const std::size_t expected = expected_host_base_order(host.instance);
    std::ostringstream d;
    d << "base " << host.base_order << " (expected " << expected << "), total " << flat.order() << " (expected "
      << expected + decorations << ")";
    add("host_order", host.base_order == expected && flat.order() == expected + decorations, d.str());
  }

  const Graph base = undecorated(host);
  add("undecorated_bipartite", is_bipartite(base), "");
  {
    const auto girth = odd_girth(base);
    const std::size_t longest = decoration_length(k, k, pat.pairs);
    add("undecorated_odd_girth", !girth || *girth > longest,
        girth ? "shortest odd cycle " + std::to_string(*girth) + ", longest decoration " + std::to_string(longest)
              : "no odd cycle");
  }

  {
    bool ok = true;
    std::string detail;
    std::vector<std::size_t> pattern_lengths;
    auto check = [&](const DecorationCycle& c, const Graph& g, const char* side) {
      const std::size_t want = decoration_length(k, c.cls, c.block);
      if (c.length() != want || !cycle_intact(g, c)) {
        ok = false;
        if (detail.empty()) {
          detail = std::string(side) + " cycle " + cycle_name(c) + " has length " + std::to_string(c.length()) +
                   ", expected " + std::to_string(want);
        }
      }
    };
    for (const DecorationCycle& c : pat.cycles) {
      check(c, pat.graph, "pattern");
      pattern_lengths.push_back(c.length());
    }
    for (const DecorationCycle& c : host.cycles) check(c, flat, "host");
    std::sort(pattern_lengths.begin(), pattern_lengths.end());
    const bool distinct = std::adjacent_find(pattern_lengths.begin(), pattern_lengths.end()) == pattern_lengths.end();
    const bool odd = std::all_of(pattern_lengths.begin(), pattern_lengths.end(), [](std::size_t l) { return l % 2; });
    if (!distinct || !odd) {
      ok = false;
      if (detail.empty()) detail = "pattern cycle lengths are not distinct odd values";
    }
    add("decoration_cycles", ok, detail);
  }

  {
    std::vector<Vertex> anchors;
    for (const auto& per_vertex : host.anchor) anchors.insert(anchors.end(), per_vertex.begin(), per_vertex.end());
    std::size_t closest = kUnreachable;
    for (Vertex a : anchors) {
      const auto dist = bfs_distances(base, a);
      for (Vertex b : anchors) {
        if (b != a) closest = std::min(closest, dist[b]);
      }
    }
    add("anchor_distances", closest >= 6,
        closest == kUnreachable ? "no two anchors connected" : "closest pair at distance " + std::to_string(closest));
  }

  const Graph e1 = host.graph.layer(0);
  const Graph e2 = host.graph.layer(host.graph.layer_count() > 1 ? 1 : 0);
  add("layer_partition", host.graph.layer_count() == 2 && e1.size() + e2.size() == flat.size(),
      std::to_string(e1.size()) + " + " + std::to_string(e2.size()) + " of " + std::to_string(flat.size()) +
          " edges");
  add("e1_star_forest", is_star_forest(e1), "");
  add("e2_matching", is_matching(e2), "");
  return report;
}

}  // namespace mlmotif
