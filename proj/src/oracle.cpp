#include "mlmotif/oracle.hpp"

#include <deque>

namespace mlmotif {

namespace {

class OracleSearch {
 public:
  OracleSearch(const Graph& host, const Pattern& pat)
      : host_(host), lists_(pat, host.order()), image_(pat.size(), kNoVertex), used_(host.order(), 0) {
    // BFS order per component: every non-root vertex follows one of its neighbours.
    const Graph& h = pat.graph;
    std::vector<bool> seen(h.order(), false);
    for (std::size_t root = 0; root < h.order(); ++root) {
      if (seen[root]) continue;
      seen[root] = true;
      std::deque<Vertex> queue{static_cast<Vertex>(root)};
      while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        order_.push_back(v);
        for (Vertex w : h.neighbors(v)) {
          if (!seen[w]) {
            seen[w] = true;
            queue.push_back(w);
          }
        }
      }
    }
    std::vector<std::size_t> position(h.order());
    for (std::size_t i = 0; i < order_.size(); ++i) position[order_[i]] = i;
    earlier_.resize(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) {
      for (Vertex w : h.neighbors(order_[i])) {
        if (position[w] < i) earlier_[i].push_back(w);
      }
    }
  }

  Count count() {
    Count total = 0;
    search(0, [&total] {
      total += 1;
      return false;
    });
    return total;
  }

  bool exists() {
    return search(0, [] { return true; });
  }

 private:
  bool fits(std::size_t pos, Vertex x) const {
    const Vertex v = order_[pos];
    if (used_[x] || !lists_.allows(v, x)) return false;
    for (Vertex w : earlier_[pos]) {
      if (!host_.adjacent(image_[w], x)) return false;
    }
    return true;
  }

  // Returns true to stop the whole search.
  template <class OnLeaf>
  bool search(std::size_t pos, OnLeaf&& on_leaf) {
    if (pos == order_.size()) return on_leaf();
    const Vertex v = order_[pos];
    for (std::size_t x = 0; x < host_.order(); ++x) {
      const Vertex hx = static_cast<Vertex>(x);
      if (!fits(pos, hx)) continue;
      image_[v] = hx;
      used_[hx] = 1;
      const bool stop = search(pos + 1, on_leaf);
      used_[hx] = 0;
      image_[v] = kNoVertex;
      if (stop) return true;
    }
    return false;
  }

  const Graph& host_;
  CandidateTable lists_;
  std::vector<Vertex> order_;
  std::vector<std::vector<Vertex>> earlier_;
  std::vector<Vertex> image_;
  std::vector<char> used_;
};

}  // namespace

Count count_embeddings_oracle(const Graph& host, const Pattern& pat) {
  validate_pattern(pat, host.order());
  return OracleSearch(host, pat).count();
}

bool exists_embedding_oracle(const Graph& host, const Pattern& pat) {
  validate_pattern(pat, host.order());
  return OracleSearch(host, pat).exists();
}

}  // namespace mlmotif
