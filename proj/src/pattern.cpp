#include "mlmotif/pattern.hpp"

#include <algorithm>

namespace mlmotif {

Pattern::Pattern(Graph h, std::vector<VertexList> l) : graph(std::move(h)), lists(std::move(l)) {
  for (VertexList& list : lists) {
    if (!list) continue;
    std::sort(list->begin(), list->end());
    list->erase(std::unique(list->begin(), list->end()), list->end());
  }
}

bool Pattern::unrestricted() const {
  return std::all_of(lists.begin(), lists.end(), [](const VertexList& l) { return !l.has_value(); });
}

void validate_pattern(const Pattern& pat, std::size_t host_order) {
  if (pat.size() == 0) throw std::invalid_argument("pattern has no vertices");
  if (pat.lists.size() != pat.size()) {
    throw std::invalid_argument("pattern has " + std::to_string(pat.size()) + " vertices but " +
                                std::to_string(pat.lists.size()) + " lists");
  }
  for (std::size_t i = 0; i < pat.lists.size(); ++i) {
    if (!pat.lists[i]) continue;
    for (Vertex x : *pat.lists[i]) {
      if (x >= host_order) {
        throw std::invalid_argument("list of pattern vertex " + std::to_string(i) +
                                    " names unknown host vertex " + std::to_string(x));
      }
    }
  }
}

bool is_embedding(const Graph& host, const Pattern& pat, const Embedding& emb) {
  const std::size_t k = pat.size();
  if (emb.image.size() != k) return false;
  std::vector<Vertex> sorted = emb.image;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i < k; ++i) {
    const Vertex x = emb.image[i];
    if (x >= host.order()) return false;
    if (i < pat.lists.size() && pat.lists[i] &&
        !std::binary_search(pat.lists[i]->begin(), pat.lists[i]->end(), x)) {
      return false;
    }
  }
  for (const Edge& e : pat.graph.edges()) {
    if (!host.adjacent(emb.image[e.u], emb.image[e.v])) return false;
  }
  return true;
}

CandidateTable::CandidateTable(const Pattern& pat, std::size_t host_order)
    : host_order_(host_order), full_(pat.size(), true), lists_(pat.size()), member_(pat.size()) {
  for (std::size_t i = 0; i < pat.size(); ++i) {
    if (i >= pat.lists.size() || !pat.lists[i]) continue;
    full_[i] = false;
    lists_[i] = *pat.lists[i];
    member_[i].assign(host_order, 0);
    for (Vertex x : lists_[i]) {
      if (x >= host_order) {
        throw std::invalid_argument("list of pattern vertex " + std::to_string(i) +
                                    " names unknown host vertex " + std::to_string(x));
      }
      member_[i][x] = 1;
    }
  }
}

}  // namespace mlmotif
