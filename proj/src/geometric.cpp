#include "mlmotif/geometric.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>

#include "embedding_search.hpp"

namespace mlmotif {

namespace {

using Int128 = __int128;

void check_layout(const Graph& host, const GeometricLayout& layout) {
  if (layout.positions.size() != host.order()) {
    throw StrategyInfeasible("layout has " + std::to_string(layout.positions.size()) +
                             " positions for a host on " + std::to_string(host.order()) + " vertices");
  }
}

Rational squared_distance(const Point& a, const Point& b) {
  const Rational dx = a.x - b.x;
  const Rational dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Vertices sorted in scan order, with coordinates either scaled to a common
// integer grid (the usual case for decimal input) or kept as rationals.
class ScanIndex {
 public:
  explicit ScanIndex(const GeometricLayout& layout) : layout_(layout), order_(layout.positions.size()) {
    const std::size_t n = layout.positions.size();
    std::iota(order_.begin(), order_.end(), Vertex{0});
    std::sort(order_.begin(), order_.end(),
              [&layout](Vertex a, Vertex b) { return scan_before(layout, a, b); });
    rank_.resize(n);
    for (std::size_t r = 0; r < n; ++r) rank_[order_[r]] = r;
    try_integer_grid();
  }

  std::size_t size() const noexcept { return order_.size(); }
  Vertex at_rank(std::size_t r) const { return order_[r]; }
  std::size_t rank(Vertex v) const { return rank_[v]; }

  /// Sets the squared radius for subsequent gather() calls.
  void set_radius_sq(const Rational& radius_sq) {
    radius_sq_ = radius_sq;
    if (integer_grid_) {
      const Rational scaled = radius_sq * Rational(scale_ * scale_);
      // Floor is exact for the <= comparison against integer distances.
      const Count floor = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
      const Count cap = Count(1) << 126;
      grid_radius_sq_ = floor >= cap ? (Int128(1) << 126) : static_cast<Int128>(floor);
    }
  }

  /// Appends W_v (in scan order) to `out`.
  void gather(Vertex v, std::vector<Vertex>& out) const {
    const std::size_t start = rank_[v];
    if (integer_grid_) {
      const Int128 xv = gx_[v];
      const Int128 yv = gy_[v];
      for (std::size_t r = start; r < order_.size(); ++r) {
        const Vertex w = order_[r];
        const Int128 dx = gx_[w] - xv;
        if (dx * dx > grid_radius_sq_) break;
        const Int128 dy = gy_[w] - yv;
        if (dx * dx + dy * dy <= grid_radius_sq_) out.push_back(w);
      }
      return;
    }
    const Point& pv = layout_.positions[v];
    for (std::size_t r = start; r < order_.size(); ++r) {
      const Vertex w = order_[r];
      const Rational dx = layout_.positions[w].x - pv.x;
      if (dx * dx > radius_sq_) break;
      if (squared_distance(layout_.positions[w], pv) <= radius_sq_) out.push_back(w);
    }
  }

 private:
  void try_integer_grid() {
    // Common denominator; coordinates must stay within +-2^61 on the grid.
    Count lcm = 1;
    for (const Point& p : layout_.positions) {
      for (const Rational* c : {&p.x, &p.y}) {
        const Count den = boost::multiprecision::denominator(*c);
        lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
        if (lcm > (Count(1) << 61)) return;
      }
    }
    const Count limit = Count(1) << 61;
    std::vector<Int128> xs;
    std::vector<Int128> ys;
    xs.reserve(layout_.positions.size());
    ys.reserve(layout_.positions.size());
    for (const Point& p : layout_.positions) {
      const Count sx = boost::multiprecision::numerator(p.x) * (lcm / boost::multiprecision::denominator(p.x));
      const Count sy = boost::multiprecision::numerator(p.y) * (lcm / boost::multiprecision::denominator(p.y));
      if (abs(sx) > limit || abs(sy) > limit) return;
      xs.push_back(static_cast<Int128>(static_cast<long long>(sx)));
      ys.push_back(static_cast<Int128>(static_cast<long long>(sy)));
    }
    gx_ = std::move(xs);
    gy_ = std::move(ys);
    scale_ = lcm;
    integer_grid_ = true;
  }

  const GeometricLayout& layout_;
  std::vector<Vertex> order_;
  std::vector<std::size_t> rank_;
  bool integer_grid_ = false;
  Count scale_ = 1;
  std::vector<Int128> gx_;
  std::vector<Int128> gy_;
  Rational radius_sq_ = 0;
  Int128 grid_radius_sq_ = 0;
};

Rational max_edge_length_sq(const Graph& host, const GeometricLayout& layout) {
  Rational best = 0;
  for (const Edge& e : host.edges()) {
    Rational d = squared_distance(layout.positions[e.u], layout.positions[e.v]);
    if (d > best) best = d;
  }
  return best;
}

struct WindowFilter {
  const std::vector<std::uint32_t>* stamp;
  const std::uint32_t* epoch;
  bool operator()(Vertex x) const { return (*stamp)[x] == *epoch; }
};

}  // namespace

GeometricLayout restrict_layout(const GeometricLayout& layout, std::span<const Vertex> to_original) {
  GeometricLayout out;
  out.positions.reserve(to_original.size());
  for (Vertex v : to_original) out.positions.push_back(layout.positions.at(v));
  return out;
}

bool scan_before(const GeometricLayout& layout, Vertex a, Vertex b) {
  const Point& pa = layout.positions[a];
  const Point& pb = layout.positions[b];
  if (pa.x != pb.x) return pa.x < pb.x;
  if (pa.y != pb.y) return pa.y > pb.y;
  return a < b;
}

std::vector<Vertex> window(const Graph& host, const GeometricLayout& layout, Vertex v,
                           const Rational& radius_sq) {
  check_layout(host, layout);
  if (v >= host.order()) throw std::out_of_range("unknown vertex " + std::to_string(v));
  if (radius_sq < 0) throw std::invalid_argument("negative squared radius");
  ScanIndex index(layout);
  index.set_radius_sq(radius_sq);
  std::vector<Vertex> out;
  index.gather(v, out);
  std::sort(out.begin(), out.end());
  return out;
}

WindowStats window_stats(const Graph& host, const GeometricLayout& layout, const Pattern& pat) {
  check_layout(host, layout);
  WindowStats stats;
  stats.max_edge_length_sq = max_edge_length_sq(host, layout);
  stats.pattern_diameter = diameter(pat.graph);
  if (!stats.pattern_diameter) return stats;
  const Rational delta = *stats.pattern_diameter;
  ScanIndex index(layout);
  index.set_radius_sq(delta * delta * stats.max_edge_length_sq);
  std::vector<Vertex> buffer;
  for (std::size_t v = 0; v < host.order(); ++v) {
    buffer.clear();
    index.gather(static_cast<Vertex>(v), buffer);
    stats.max_occupancy = std::max(stats.max_occupancy, buffer.size());
  }
  return stats;
}

Count count_geometric(const Graph& host, const GeometricLayout& layout, const Pattern& pat,
                      GeometricAudit* audit, unsigned threads) {
  check_layout(host, layout);
  validate_pattern(pat, host.order());
  const auto delta = diameter(pat.graph);
  if (!delta) throw StrategyInfeasible("window scan needs a connected pattern");

  const std::size_t k = pat.size();
  const Rational radius_sq = Rational(*delta) * Rational(*delta) * max_edge_length_sq(host, layout);
  ScanIndex index(layout);
  index.set_radius_sq(radius_sq);
  const CandidateTable lists(pat, host.order());

  // One plan per choice of the pattern vertex sent to the anchor.
  std::vector<detail::SearchPlan> plans;
  plans.reserve(k);
  for (std::size_t w = 0; w < k; ++w) plans.push_back(detail::make_plan(pat.graph, static_cast<Vertex>(w)));

  std::atomic<std::uint64_t> embeddings{0};
  std::atomic<std::uint64_t> misanchored{0};
  std::atomic<std::size_t> max_occupancy{0};

  struct Worker {
    std::vector<std::uint32_t> stamp;
    std::uint32_t epoch = 0;
    std::vector<Vertex> members;
    std::vector<detail::Extender<WindowFilter>> extenders;
  };

  auto make_worker = [&] {
    Worker worker;
    worker.stamp.assign(host.order(), 0);
    worker.extenders.reserve(k);
    return worker;
  };

  auto scan_anchor = [&](Worker& worker, std::size_t anchor_index) -> Count {
    if (worker.extenders.empty()) {
      for (std::size_t w = 0; w < k; ++w) {
        worker.extenders.emplace_back(host, plans[w], lists, WindowFilter{&worker.stamp, &worker.epoch});
      }
    }
    const Vertex v = static_cast<Vertex>(anchor_index);
    ++worker.epoch;
    worker.members.clear();
    index.gather(v, worker.members);
    for (Vertex x : worker.members) worker.stamp[x] = worker.epoch;

    std::size_t seen = max_occupancy.load();
    while (worker.members.size() > seen && !max_occupancy.compare_exchange_weak(seen, worker.members.size())) {
    }
    if (worker.members.size() < k) return 0;

    Count total = 0;
    const std::size_t anchor_rank = index.rank(v);
    for (std::size_t w = 0; w < k; ++w) {
      auto& ext = worker.extenders[w];
      if (!ext.fits(0, v)) continue;
      ext.place(0, v);
      if (audit) {
        std::uint64_t local = 0;
        std::uint64_t wrong = 0;
        ext.enumerate_from(1, [&] {
          ++local;
          std::size_t first = index.size();
          for (Vertex x : ext.image()) first = std::min(first, index.rank(x));
          if (first != anchor_rank) ++wrong;
          return false;
        });
        total += local;
        embeddings += local;
        misanchored += wrong;
      } else {
        total += ext.count_from(1);
      }
      ext.unplace(0);
    }
    return total;
  };

  Count total = detail::parallel_sum(host.order(), threads, make_worker, scan_anchor);

  if (audit) {
    audit->anchors = host.order();
    audit->max_occupancy = max_occupancy.load();
    audit->embeddings = embeddings.load();
    audit->misanchored = misanchored.load();
    audit->window_total = total;
  }
  return total;
}

}  // namespace mlmotif
