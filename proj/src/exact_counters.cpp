#include "mlmotif/exact_counters.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "embedding_search.hpp"
#include "mlmotif/oracle.hpp"

namespace mlmotif {

namespace {

constexpr std::pair<Method, std::string_view> kMethodNames[] = {
    {Method::oracle, "oracle"},
    {Method::bounded_degree, "bounded-degree"},
    {Method::vc_layer, "vc-layer"},
    {Method::geometric, "geometric"},
    {Method::automatic, "auto"},
};

// Caps the number of (W, theta_U) leaves auto is willing to enumerate.
constexpr std::uint64_t kAutoLeafCap = std::uint64_t{1} << 20;

Count power(std::size_t base, std::size_t exp) {
  Count out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

std::vector<Vertex> sorted_intersection(const std::vector<Vertex>& a, std::span<const Vertex> b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Enumerates partial maps theta_U : W -> U and hands each leaf to the
// residual counter.
class CoverSplit {
 public:
  CoverSplit(const LayeredGraph& host, const GeometricLayout* layout, const Pattern& pat, LayerId cover_layer,
             std::vector<Vertex> cover, const CountStrategy& inner, const CountOptions& options, VcLayerStats& stats)
      : host_(host), pat_(pat), cover_layer_(cover_layer), cover_(std::move(cover)), inner_(inner),
        options_(options), stats_(stats), lists_(pat, host.order()),
        residual_(remove_vertices(host, cover_)), theta_(pat.size(), kNoVertex),
        cover_used_(cover_.size(), 0), in_cover_(host.order(), 0) {
    for (Vertex u : cover_) in_cover_[u] = 1;
    if (layout) residual_layout_ = restrict_layout(*layout, residual_.to_original);
    has_layout_ = layout != nullptr;
    dirty_residual_ = false;
    for (Vertex v : residual_.to_original) dirty_residual_ = dirty_residual_ || in_cover_[v];
    for (const LayeredEdge& e : residual_.graph.layered_edges()) {
      dirty_residual_ = dirty_residual_ || e.layer == cover_layer_;
    }
  }

  Count run() {
    assign(0);
    return total_;
  }

 private:
  void assign(std::size_t i) {
    const std::size_t k = pat_.size();
    if (i == k) {
      leaf();
      return;
    }
    assign(i + 1);  // i stays outside W
    for (std::size_t c = 0; c < cover_.size(); ++c) {
      if (cover_used_[c]) continue;
      const Vertex u = cover_[c];
      if (!lists_.allows(i, u)) continue;
      bool ok = true;
      for (Vertex j : pat_.graph.neighbors(static_cast<Vertex>(i))) {
        if (j < i && theta_[j] != kNoVertex && !host_.flat().adjacent(theta_[j], u)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      theta_[i] = u;
      cover_used_[c] = 1;
      assign(i + 1);
      cover_used_[c] = 0;
      theta_[i] = kNoVertex;
    }
  }

  void leaf() {
    ++stats_.partial_maps;
    const std::size_t k = pat_.size();
    std::vector<Vertex> rest;
    for (std::size_t i = 0; i < k; ++i) {
      if (theta_[i] == kNoVertex) rest.push_back(static_cast<Vertex>(i));
    }
    if (rest.empty()) {
      total_ += 1;
      return;
    }

    const Graph& flat = host_.flat();
    std::vector<VertexList> inner_lists;
    inner_lists.reserve(rest.size());
    for (Vertex i : rest) {
      std::vector<Vertex> anchors;
      for (Vertex j : pat_.graph.neighbors(i)) {
        if (theta_[j] != kNoVertex) anchors.push_back(theta_[j]);
      }
      if (anchors.empty() && lists_.full(i)) {
        inner_lists.emplace_back(std::nullopt);
        continue;
      }
      std::vector<Vertex> cand;
      if (anchors.empty()) {
        cand = lists_.list(i);
      } else {
        std::sort(anchors.begin(), anchors.end(),
                  [&flat](Vertex a, Vertex b) { return flat.degree(a) < flat.degree(b); });
        auto first = flat.neighbors(anchors.front());
        cand.assign(first.begin(), first.end());
        for (std::size_t a = 1; a < anchors.size() && !cand.empty(); ++a) {
          cand = sorted_intersection(cand, flat.neighbors(anchors[a]));
        }
      }
      std::vector<Vertex> mapped;
      for (Vertex x : cand) {
        if (!in_cover_[x] && lists_.allows(i, x)) mapped.push_back(residual_.from_original[x]);
      }
      if (mapped.empty()) return;
      std::sort(mapped.begin(), mapped.end());
      inner_lists.emplace_back(std::move(mapped));
    }

    for (const VertexList& l : inner_lists) {
      if (!l) continue;
      for (Vertex x : *l) {
        if (in_cover_[residual_.to_original[x]]) {
          ++stats_.dirty_inner_calls;
          break;
        }
      }
    }
    if (dirty_residual_) ++stats_.dirty_inner_calls;
    ++stats_.inner_calls;

    Pattern inner_pattern(residual_pattern(rest), std::move(inner_lists));
    total_ += count_dispatch(residual_.graph, has_layout_ ? &residual_layout_ : nullptr, inner_pattern, inner_,
                             nullptr, options_);
  }

  const Graph& residual_pattern(const std::vector<Vertex>& rest) {
    std::uint64_t mask = 0;
    for (Vertex i : rest) mask |= std::uint64_t{1} << i;
    auto it = pattern_cache_.find(mask);
    if (it == pattern_cache_.end()) {
      it = pattern_cache_.emplace(mask, induced_subgraph(pat_.graph, rest).graph).first;
    }
    return it->second;
  }

  const LayeredGraph& host_;
  const Pattern& pat_;
  LayerId cover_layer_;
  std::vector<Vertex> cover_;
  const CountStrategy& inner_;
  const CountOptions& options_;
  VcLayerStats& stats_;
  CandidateTable lists_;
  LayeredSubgraph residual_;
  GeometricLayout residual_layout_;
  bool has_layout_ = false;
  bool dirty_residual_ = false;
  std::vector<Vertex> theta_;
  std::vector<char> cover_used_;
  std::vector<char> in_cover_;
  std::map<std::uint64_t, Graph> pattern_cache_;
  Count total_ = 0;
};

void check_strategy(const CountStrategy& s) {
  if (s.method != Method::vc_layer) return;
  if (s.inner && s.inner->method == Method::vc_layer && s.inner->cover_layer == s.cover_layer) {
    throw std::invalid_argument("vc-layer strategy nests a split on the same layer " +
                                std::to_string(s.cover_layer));
  }
  if (s.inner) check_strategy(*s.inner);
}

}  // namespace

std::string_view method_name(Method m) {
  for (const auto& [method, name] : kMethodNames) {
    if (method == m) return name;
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (const auto& [method, text] : kMethodNames) {
    if (text == name) return method;
  }
  return std::nullopt;
}

std::string CountStrategy::describe() const {
  std::string out(method_name(method));
  if (method == Method::vc_layer) {
    out += "(" + std::to_string(cover_layer) + ")>";
    out += inner ? inner->describe() : std::string("auto");
  }
  return out;
}

Count count_bounded_degree(const Graph& host, const Pattern& pat, unsigned threads) {
  validate_pattern(pat, host.order());
  const CandidateTable lists(pat, host.order());
  const detail::SearchPlan plan = detail::make_plan(pat.graph);

  std::vector<Vertex> roots;
  {
    detail::Extender<> probe(host, plan, lists);
    probe.for_each_root_candidate(0, [&roots](Vertex x) { roots.push_back(x); });
  }
  auto make_state = [&] { return detail::Extender<>(host, plan, lists); };
  return detail::parallel_sum(roots.size(), threads, make_state, [&](detail::Extender<>& ext, std::size_t i) {
    ext.place(0, roots[i]);
    Count c = ext.count_from(1);
    ext.unplace(0);
    return c;
  });
}

std::optional<Embedding> find_embedding(const Graph& host, const Pattern& pat) {
  validate_pattern(pat, host.order());
  const CandidateTable lists(pat, host.order());
  const detail::SearchPlan plan = detail::make_plan(pat.graph);
  detail::Extender<> ext(host, plan, lists);
  std::optional<Embedding> found;
  ext.enumerate_from(0, [&] {
    found = ext.embedding();
    return true;
  });
  return found;
}

bool exists_embedding(const Graph& host, const Pattern& pat) { return find_embedding(host, pat).has_value(); }

Count count_vc_layer(const LayeredGraph& host, const GeometricLayout* layout, const Pattern& pat,
                     LayerId cover_layer, const CountStrategy& inner, VcLayerStats* stats,
                     const CountOptions& options) {
  validate_pattern(pat, host.order());
  if (cover_layer >= host.layer_count()) {
    throw std::invalid_argument("cover layer " + std::to_string(cover_layer) + " does not exist (host has " +
                                std::to_string(host.layer_count()) + " layers)");
  }
  if (pat.size() > 63) throw std::invalid_argument("vc-layer split supports patterns of at most 63 vertices");
  CountStrategy outer = CountStrategy::vc_layer(cover_layer, inner);
  check_strategy(outer);

  auto cover = minimum_vertex_cover(host.layer(cover_layer), std::min(options.cover_guard, kVertexCoverGuard));
  if (!cover) {
    throw StrategyInfeasible("layer " + std::to_string(cover_layer) + " has no vertex cover of size <= " +
                             std::to_string(std::min(options.cover_guard, kVertexCoverGuard)));
  }

  VcLayerStats local;
  VcLayerStats& s = stats ? *stats : local;
  s = VcLayerStats{};
  s.cover = *cover;
  s.pattern_size = pat.size();
  s.call_budget = power(cover->size() + 1, pat.size());
  CoverSplit split(host, layout, pat, cover_layer, *cover, inner, options, s);
  return split.run();
}

Count count_dispatch(const LayeredGraph& host, const GeometricLayout* layout, const Pattern& pat,
                     const CountStrategy& strategy, DispatchReport* report, const CountOptions& options) {
  check_strategy(strategy);
  DispatchReport local;
  DispatchReport& rep = report ? *report : local;

  switch (strategy.method) {
    case Method::oracle:
      rep.resolved = "oracle";
      return count_embeddings_oracle(host.flat(), pat);
    case Method::bounded_degree:
      rep.resolved = "bounded-degree";
      return count_bounded_degree(host.flat(), pat, options.threads);
    case Method::geometric:
      if (!layout) throw StrategyInfeasible("geometric counting needs vertex positions");
      rep.resolved = "geometric";
      return count_geometric(host.flat(), *layout, pat, nullptr, options.threads);
    case Method::vc_layer: {
      const CountStrategy inner = strategy.inner ? *strategy.inner : CountStrategy::of(Method::automatic);
      VcLayerStats stats;
      Count c = count_vc_layer(host, layout, pat, strategy.cover_layer, inner, &stats, options);
      rep.resolved = strategy.describe();
      rep.vc_layer = std::move(stats);
      return c;
    }
    case Method::automatic:
      break;
  }

  validate_pattern(pat, host.order());
  if (layout && layout->positions.size() == host.order() && is_connected(pat.graph)) {
    const WindowStats ws = window_stats(host.flat(), *layout, pat);
    if (ws.max_occupancy <= kAutoWindowLimit) {
      std::ostringstream note;
      note << "auto: geometric (max window " << ws.max_occupancy << ")";
      rep.notes.push_back(note.str());
      rep.resolved = "geometric";
      return count_geometric(host.flat(), *layout, pat, nullptr, options.threads);
    }
    rep.notes.push_back("auto: windows too large (" + std::to_string(ws.max_occupancy) + ")");
  }

  std::optional<std::pair<LayerId, std::size_t>> best;
  for (LayerId l = 0; l < host.layer_count(); ++l) {
    const Graph g = host.layer(l);
    if (g.size() == 0) continue;
    const std::size_t guard = std::min(kAutoCoverGuard, options.cover_guard);
    auto cover = minimum_vertex_cover(g, guard);
    if (!cover) continue;
    if (!best || cover->size() < best->second) best = std::make_pair(l, cover->size());
  }
  if (best && power(best->second + 1, pat.size()) <= kAutoLeafCap && pat.size() <= 63) {
    rep.notes.push_back("auto: vc-layer on layer " + std::to_string(best->first) + " (cover " +
                        std::to_string(best->second) + ")");
    const CountStrategy chosen = CountStrategy::vc_layer(best->first, CountStrategy::of(Method::automatic));
    VcLayerStats stats;
    Count c = count_vc_layer(host, layout, pat, best->first, *chosen.inner, &stats, options);
    rep.resolved = "vc-layer(" + std::to_string(best->first) + ")>auto";
    rep.vc_layer = std::move(stats);
    return c;
  }

  rep.notes.push_back("auto: bounded-degree");
  rep.resolved = "bounded-degree";
  return count_bounded_degree(host.flat(), pat, options.threads);
}

}  // namespace mlmotif
