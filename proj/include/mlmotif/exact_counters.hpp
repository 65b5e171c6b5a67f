#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlmotif/count.hpp"
#include "mlmotif/decomposition.hpp"
#include "mlmotif/geometric.hpp"
#include "mlmotif/graph.hpp"
#include "mlmotif/pattern.hpp"

namespace mlmotif {

enum class Method { oracle, bounded_degree, vc_layer, geometric, automatic };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

/// How to count. A vc_layer strategy names the layer whose vertex cover is
/// split off and the strategy used on what remains.
struct CountStrategy {
  Method method = Method::automatic;
  LayerId cover_layer = 0;
  std::shared_ptr<const CountStrategy> inner;

  static CountStrategy of(Method m) { return CountStrategy{m, 0, nullptr}; }
  static CountStrategy vc_layer(LayerId layer, CountStrategy inner_strategy) {
    return CountStrategy{Method::vc_layer, layer, std::make_shared<const CountStrategy>(std::move(inner_strategy))};
  }

  std::string describe() const;
};

struct CountOptions {
  unsigned threads = 1;
  std::size_t cover_guard = kVertexCoverGuard;
};

/// Backtracking in which every non-root pattern vertex is placed on a host
/// neighbour of an already placed pattern neighbour. Exact on any host; the
/// cost is bounded by n * maxdeg^(k-1) per component of a connected pattern.
Count count_bounded_degree(const Graph& host, const Pattern& pat, unsigned threads = 1);

/// Decision version of the same search, stopping at the first embedding.
std::optional<Embedding> find_embedding(const Graph& host, const Pattern& pat);
bool exists_embedding(const Graph& host, const Pattern& pat);

struct VcLayerStats {
  std::vector<Vertex> cover;            // U, original host ids
  std::size_t pattern_size = 0;
  std::uint64_t partial_maps = 0;       // valid (W, theta_U) pairs
  std::uint64_t inner_calls = 0;        // counting calls on the residual host
  Count call_budget = 0;                // (|U| + 1)^k
  std::uint64_t dirty_inner_calls = 0;  // residual instance touched U or a cover-layer edge
};

/// Splits off a minimum vertex cover U of `cover_layer`, enumerates which
/// pattern vertices go to U and where, and counts each extension on the
/// host with U deleted using `inner`. Throws StrategyInfeasible when the
/// layer has no cover within options.cover_guard.
Count count_vc_layer(const LayeredGraph& host, const GeometricLayout* layout, const Pattern& pat,
                     LayerId cover_layer, const CountStrategy& inner, VcLayerStats* stats = nullptr,
                     const CountOptions& options = {});

struct DispatchReport {
  std::string resolved;             // e.g. "vc-layer(1)>bounded-degree"
  std::vector<std::string> notes;   // why `auto` chose what it did
  std::optional<VcLayerStats> vc_layer;
};

inline constexpr std::size_t kAutoWindowLimit = 64;
inline constexpr std::size_t kAutoCoverGuard = 8;

/// Routes to the counter named by `strategy`. `auto` prefers the window scan
/// when a layout is present and windows are small, then a vertex-cover split
/// on the layer with the smallest cover, then plain bounded-degree search.
Count count_dispatch(const LayeredGraph& host, const GeometricLayout* layout, const Pattern& pat,
                     const CountStrategy& strategy, DispatchReport* report = nullptr,
                     const CountOptions& options = {});

}  // namespace mlmotif
