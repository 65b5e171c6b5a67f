#include "embedding_search.hpp"

namespace mlmotif::detail {

SearchPlan make_plan(const Graph& h, std::optional<Vertex> first) {
  const std::size_t k = h.order();
  SearchPlan plan;
  std::vector<std::size_t> position(k, kRoot);
  std::vector<std::size_t> placed_neighbours(k, 0);

  auto better_root = [&h](Vertex a, Vertex b) {
    return h.degree(a) > h.degree(b) || (h.degree(a) == h.degree(b) && a < b);
  };

  while (plan.order.size() < k) {
    // Pick the next vertex: most placed neighbours, then degree, then id.
    Vertex next = kNoVertex;
    if (plan.order.empty() && first) {
      next = *first;
    } else {
      for (std::size_t v = 0; v < k; ++v) {
        if (position[v] != kRoot) continue;
        const Vertex cand = static_cast<Vertex>(v);
        if (next == kNoVertex) {
          next = cand;
          continue;
        }
        if (placed_neighbours[cand] != placed_neighbours[next]) {
          if (placed_neighbours[cand] > placed_neighbours[next]) next = cand;
        } else if (better_root(cand, next)) {
          next = cand;
        }
      }
    }

    const std::size_t pos = plan.order.size();
    position[next] = pos;
    plan.order.push_back(next);
    plan.degree.push_back(h.degree(next));
    plan.parent.push_back(kRoot);
    plan.checks.emplace_back();
    for (Vertex w : h.neighbors(next)) {
      if (position[w] == kRoot) {
        ++placed_neighbours[w];
        continue;
      }
      if (plan.parent[pos] == kRoot) {
        plan.parent[pos] = position[w];
      } else {
        plan.checks[pos].push_back(position[w]);
      }
    }
  }
  return plan;
}

}  // namespace mlmotif::detail
