#include "mlmotif/decomposition.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>

namespace mlmotif {

namespace {

// Lazy max-heap over residual degrees; stale entries are skipped on pop.
class Peeler {
 public:
  explicit Peeler(const Graph& g) : g_(g), degree_(g.order()), removed_(g.order(), false) {
    for (std::size_t v = 0; v < g.order(); ++v) {
      degree_[v] = g.degree(static_cast<Vertex>(v));
      heap_.push({degree_[v], static_cast<Vertex>(v)});
    }
  }

  std::size_t max_degree() {
    settle();
    return heap_.empty() ? 0 : heap_.top().first;
  }

  Vertex remove_top() {
    settle();
    const Vertex v = heap_.top().second;
    heap_.pop();
    removed_[v] = true;
    for (Vertex w : g_.neighbors(v)) {
      if (removed_[w]) continue;
      --degree_[w];
      heap_.push({degree_[w], w});
    }
    return v;
  }

 private:
  struct Order {
    // Larger degree first, then smaller id.
    bool operator()(const std::pair<std::size_t, Vertex>& a, const std::pair<std::size_t, Vertex>& b) const {
      if (a.first != b.first) return a.first < b.first;
      return a.second > b.second;
    }
  };

  void settle() {
    while (!heap_.empty()) {
      auto [d, v] = heap_.top();
      if (!removed_[v] && degree_[v] == d) return;
      heap_.pop();
    }
  }

  const Graph& g_;
  std::vector<std::size_t> degree_;
  std::vector<bool> removed_;
  std::priority_queue<std::pair<std::size_t, Vertex>, std::vector<std::pair<std::size_t, Vertex>>, Order> heap_;
};

class CoverSearch {
 public:
  explicit CoverSearch(const Graph& g) : g_(g), in_cover_(g.order(), 0), degree_(g.order()) {
    for (std::size_t v = 0; v < g.order(); ++v) degree_[v] = g.degree(static_cast<Vertex>(v));
    edges_left_ = g.size();
  }

  bool solve(std::size_t budget) {
    if (edges_left_ == 0) return true;
    if (budget == 0) return false;

    Vertex best = kNoVertex;
    std::size_t best_degree = 0;
    for (std::size_t v = 0; v < g_.order(); ++v) {
      if (!in_cover_[v] && degree_[v] > best_degree) {
        best_degree = degree_[v];
        best = static_cast<Vertex>(v);
      }
    }
    if (edges_left_ > budget * best_degree) return false;

    if (best_degree == 1) {
      // The rest is a matching: one endpoint per edge.
      if (edges_left_ > budget) return false;
      for (const Edge& e : g_.edges()) {
        if (!in_cover_[e.u] && !in_cover_[e.v]) take(e.u);
      }
      return true;
    }

    take(best);
    if (solve(budget - 1)) return true;
    untake(best);

    // Otherwise every uncovered neighbour must be in the cover.
    std::vector<Vertex> open;
    for (Vertex w : g_.neighbors(best)) {
      if (!in_cover_[w]) open.push_back(w);
    }
    if (open.size() <= budget) {
      for (Vertex w : open) take(w);
      if (solve(budget - open.size())) return true;
      for (auto it = open.rbegin(); it != open.rend(); ++it) untake(*it);
    }
    return false;
  }

  std::vector<Vertex> cover() const {
    std::vector<Vertex> out = chosen_;
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void take(Vertex v) {
    in_cover_[v] = 1;
    chosen_.push_back(v);
    for (Vertex w : g_.neighbors(v)) {
      if (in_cover_[w]) continue;
      --degree_[w];
      --edges_left_;
    }
  }

  void untake(Vertex v) {
    for (Vertex w : g_.neighbors(v)) {
      if (in_cover_[w]) continue;
      ++degree_[w];
      ++edges_left_;
    }
    in_cover_[v] = 0;
    chosen_.pop_back();
  }

  const Graph& g_;
  std::vector<char> in_cover_;
  std::vector<std::size_t> degree_;
  std::size_t edges_left_ = 0;
  std::vector<Vertex> chosen_;
};

}  // namespace

PeelTrace peel(const Graph& g, std::size_t steps) {
  if (steps > g.order()) {
    throw std::invalid_argument("cannot peel " + std::to_string(steps) + " vertices from a graph on " +
                                std::to_string(g.order()));
  }
  PeelTrace trace;
  Peeler peeler(g);
  for (std::size_t step = 1; step <= steps; ++step) {
    const Vertex v = peeler.remove_top();
    trace.records.push_back({step, v, peeler.max_degree()});
  }
  return trace;
}

AbdSplit abd_split(const Graph& g, std::size_t target) {
  AbdSplit split;
  Peeler peeler(g);
  while (peeler.max_degree() > target) split.high_degree.push_back(peeler.remove_top());
  split.residual_max_degree = peeler.max_degree();
  return split;
}

std::size_t abd_parameter(const Graph& g) {
  std::vector<std::size_t> degrees(g.order());
  for (std::size_t v = 0; v < g.order(); ++v) degrees[v] = g.degree(static_cast<Vertex>(v));
  std::sort(degrees.begin(), degrees.end(), std::greater<>());
  for (std::size_t l = 0;; ++l) {
    // degrees[l] is the (l+1)-th largest; at most l exceed 2l iff it does not.
    if (l >= degrees.size() || degrees[l] <= 2 * l) return l;
  }
}

std::size_t abd_split_parameter(const Graph& g) {
  Peeler peeler(g);
  for (std::size_t l = 0;; ++l) {
    if (peeler.max_degree() <= l) return l;
    peeler.remove_top();
  }
}

std::optional<std::vector<Vertex>> vertex_cover_exact(const Graph& g, std::size_t bound) {
  if (bound > kVertexCoverGuard) {
    throw std::invalid_argument("vertex cover bound " + std::to_string(bound) + " exceeds guard " +
                                std::to_string(kVertexCoverGuard));
  }
  CoverSearch search(g);
  if (!search.solve(bound)) return std::nullopt;
  return search.cover();
}

std::optional<std::vector<Vertex>> minimum_vertex_cover(const Graph& g, std::size_t guard) {
  guard = std::min(guard, kVertexCoverGuard);
  for (std::size_t b = 0; b <= guard; ++b) {
    if (auto cover = vertex_cover_exact(g, b)) return cover;
  }
  return std::nullopt;
}

}  // namespace mlmotif
