#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mlmotif/count.hpp"
#include "mlmotif/graph.hpp"
#include "mlmotif/pattern.hpp"

namespace mlmotif {

struct Point {
  Rational x;
  Rational y;

  bool operator==(const Point&) const = default;
};

/// Exact planar position for every host vertex.
struct GeometricLayout {
  std::vector<Point> positions;
};

/// Positions of the surviving vertices after a vertex deletion.
GeometricLayout restrict_layout(const GeometricLayout& layout, std::span<const Vertex> to_original);

/// Scan order used to anchor windows: x ascending, then y descending, then id.
bool scan_before(const GeometricLayout& layout, Vertex a, Vertex b);

/// W_v: vertices within squared distance `radius_sq` of v that do not come
/// before v in scan order. Always contains v. Sorted by id.
std::vector<Vertex> window(const Graph& host, const GeometricLayout& layout, Vertex v,
                           const Rational& radius_sq);

struct WindowStats {
  Rational max_edge_length_sq = 0;
  std::optional<std::size_t> pattern_diameter;  // nullopt if the pattern is disconnected
  std::size_t max_occupancy = 0;                // max |W_v| at radius diameter * edge length
};

WindowStats window_stats(const Graph& host, const GeometricLayout& layout, const Pattern& pat);

/// Instrumentation for the window scan.
struct GeometricAudit {
  std::size_t anchors = 0;
  std::size_t max_occupancy = 0;
  std::uint64_t embeddings = 0;     // embeddings enumerated across all windows
  std::uint64_t misanchored = 0;    // embeddings whose scan-first image is not the anchor
  Count window_total = 0;
};

/// Counts list embeddings by scanning one half-disc window per host vertex.
/// Each embedding is counted exactly once, at its scan-first image vertex.
/// Throws StrategyInfeasible for a disconnected pattern or a layout whose
/// size does not match the host. With `audit`, every embedding is
/// enumerated individually and checked against its anchor.
Count count_geometric(const Graph& host, const GeometricLayout& layout, const Pattern& pat,
                      GeometricAudit* audit = nullptr, unsigned threads = 1);

}  // namespace mlmotif
