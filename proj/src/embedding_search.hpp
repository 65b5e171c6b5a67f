#pragma once

// Adjacency-driven backtracking shared by the bounded-degree counter, the
// decision search and the window scan. Every non-root pattern vertex is
// extended through the host neighbourhood of an already placed neighbour,
// so the branching factor is at most the host's maximum degree.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "mlmotif/count.hpp"
#include "mlmotif/graph.hpp"
#include "mlmotif/pattern.hpp"

namespace mlmotif::detail {

inline constexpr std::size_t kRoot = std::numeric_limits<std::size_t>::max();

struct SearchPlan {
  std::vector<Vertex> order;                      // pattern vertex at each position
  std::vector<std::size_t> parent;                // earlier neighbour position, or kRoot
  std::vector<std::vector<std::size_t>> checks;   // other earlier neighbour positions
  std::vector<std::size_t> degree;                // pattern degree at each position
};

/// Visits each component from a highest-degree vertex (or `first`), always
/// continuing with the vertex that has the most placed neighbours.
SearchPlan make_plan(const Graph& h, std::optional<Vertex> first = std::nullopt);

struct AcceptAll {
  bool operator()(Vertex) const { return true; }
};

template <class Filter = AcceptAll>
class Extender {
 public:
  Extender(const Graph& host, const SearchPlan& plan, const CandidateTable& lists, Filter filter = {})
      : host_(host), plan_(plan), lists_(lists), filter_(filter),
        image_(plan.order.size(), kNoVertex), used_(host.order(), 0) {}

  bool fits(std::size_t pos, Vertex x) const {
    if (used_[x] || !filter_(x) || !lists_.allows(plan_.order[pos], x)) return false;
    if (host_.degree(x) < plan_.degree[pos]) return false;
    for (std::size_t q : plan_.checks[pos]) {
      if (!host_.adjacent(image_[q], x)) return false;
    }
    return true;
  }

  void place(std::size_t pos, Vertex x) {
    image_[pos] = x;
    used_[x] = 1;
  }
  void unplace(std::size_t pos) {
    used_[image_[pos]] = 0;
    image_[pos] = kNoVertex;
  }

  /// Root candidates for a component root position, in increasing id order.
  template <class Fn>
  void for_each_root_candidate(std::size_t pos, Fn&& fn) const {
    const Vertex v = plan_.order[pos];
    if (lists_.full(v)) {
      for (std::size_t x = 0; x < host_.order(); ++x) {
        if (fits(pos, static_cast<Vertex>(x))) fn(static_cast<Vertex>(x));
      }
    } else {
      for (Vertex x : lists_.list(v)) {
        if (fits(pos, x)) fn(x);
      }
    }
  }

  template <class Fn>
  void for_each_candidate(std::size_t pos, Fn&& fn) const {
    if (plan_.parent[pos] == kRoot) {
      for_each_root_candidate(pos, fn);
      return;
    }
    for (Vertex x : host_.neighbors(image_[plan_.parent[pos]])) {
      if (fits(pos, x)) fn(x);
    }
  }

  /// Number of completions of the current partial map from `pos` on.
  Count count_from(std::size_t pos) {
    const std::size_t k = plan_.order.size();
    if (pos == k) return 1;
    if (pos + 1 == k) {
      std::uint64_t leaves = 0;
      for_each_candidate(pos, [&leaves](Vertex) { ++leaves; });
      return leaves;
    }
    Count total = 0;
    for_each_candidate(pos, [&](Vertex x) {
      place(pos, x);
      total += count_from(pos + 1);
      unplace(pos);
    });
    return total;
  }

  /// Calls on_leaf() at every complete embedding; stops once it returns true.
  template <class OnLeaf>
  bool enumerate_from(std::size_t pos, OnLeaf&& on_leaf) {
    if (pos == plan_.order.size()) return on_leaf();
    bool stop = false;
    // Collect first: the callback may not break out of for_each_candidate.
    std::vector<Vertex> candidates;
    for_each_candidate(pos, [&candidates](Vertex x) { candidates.push_back(x); });
    for (Vertex x : candidates) {
      place(pos, x);
      stop = enumerate_from(pos + 1, on_leaf);
      unplace(pos);
      if (stop) break;
    }
    return stop;
  }

  /// Host image indexed by search position.
  const std::vector<Vertex>& image() const noexcept { return image_; }

  /// Host image indexed by pattern vertex.
  Embedding embedding() const {
    Embedding e;
    e.image.assign(image_.size(), kNoVertex);
    for (std::size_t pos = 0; pos < image_.size(); ++pos) e.image[plan_.order[pos]] = image_[pos];
    return e;
  }

 private:
  const Graph& host_;
  const SearchPlan& plan_;
  const CandidateTable& lists_;
  Filter filter_;
  std::vector<Vertex> image_;
  std::vector<char> used_;
};

/// Sums fn(state, i) over i in [0, tasks) using up to `threads` workers,
/// each with its own state from make_state(). Workers take fixed strides and
/// the sum is exact, so the result does not depend on scheduling.
template <class MakeState, class Fn>
Count parallel_sum(std::size_t tasks, unsigned threads, MakeState&& make_state, Fn&& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, tasks));
  if (workers <= 1) {
    auto state = make_state();
    Count total = 0;
    for (std::size_t i = 0; i < tasks; ++i) total += fn(state, i);
    return total;
  }
  std::vector<Count> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          auto state = make_state();
          for (std::size_t i = w; i < tasks; i += workers) partial[w] += fn(state, i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Count total = 0;
  for (const Count& c : partial) total += c;
  return total;
}

}  // namespace mlmotif::detail
