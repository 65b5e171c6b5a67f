#include "mlmotif/list_machinery.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "mlmotif/exact_counters.hpp"

namespace mlmotif {

namespace {

constexpr std::size_t kMemoLimit = std::size_t{1} << 18;

std::vector<Vertex> materialize(const VertexList& list, std::size_t n) {
  if (list) return *list;
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), Vertex{0});
  return all;
}

class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const Graph& h) : h_(h), map_(h.order(), kNoVertex), used_(h.order(), 0) {}

  Count run() { return extend(0); }

 private:
  Count extend(std::size_t i) {
    const std::size_t k = h_.order();
    if (i == k) return 1;
    const Vertex v = static_cast<Vertex>(i);
    Count total = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const Vertex w = static_cast<Vertex>(j);
      if (used_[w] || h_.degree(w) != h_.degree(v)) continue;
      bool ok = true;
      for (std::size_t a = 0; a < i && ok; ++a) {
        ok = h_.adjacent(static_cast<Vertex>(a), v) == h_.adjacent(map_[a], w);
      }
      if (!ok) continue;
      map_[i] = w;
      used_[w] = 1;
      total += extend(i + 1);
      used_[w] = 0;
    }
    map_[i] = kNoVertex;
    return total;
  }

  const Graph& h_;
  std::vector<Vertex> map_;
  std::vector<char> used_;
};

void partitions_from(std::size_t i, std::uint32_t blocks, std::vector<std::uint32_t>& current,
                     std::vector<std::vector<std::uint32_t>>& out) {
  if (i == current.size()) {
    out.push_back(current);
    return;
  }
  for (std::uint32_t b = 0; b <= blocks; ++b) {
    current[i] = b;
    partitions_from(i + 1, b == blocks ? blocks + 1 : blocks, current, out);
  }
}

class BlowupCounter {
 public:
  BlowupCounter(const Graph& host, const UnrestrictedCounter& inner) : host_(host), inner_(inner) {}

  Count count(const Pattern& pat) {
    const std::size_t k = pat.size();
    for (const VertexList& l : pat.lists) {
      if (l && l->empty()) return 0;
    }
    const BlowUp& b = blown(k);
    std::vector<VertexList> lists;
    lists.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Vertex> copies;
      for (Vertex u : materialize(pat.lists[i], host_.order())) {
        copies.push_back(static_cast<Vertex>(u * k + i));
      }
      lists.emplace_back(std::move(copies));
    }
    Count total = count_disjoint_lists(b.graph, Pattern(pat.graph, std::move(lists)), inner_);

    for (const auto& block : set_partitions(k)) {
      const std::uint32_t blocks = *std::max_element(block.begin(), block.end()) + 1;
      if (blocks == k) continue;
      Quotient q = quotient_pattern(pat, block);
      if (!q.valid) continue;
      total -= count(q.pattern);
    }
    return total;
  }

 private:
  const BlowUp& blown(std::size_t copies) {
    auto it = cache_.find(copies);
    if (it == cache_.end()) it = cache_.emplace(copies, blow_up(host_, copies)).first;
    return it->second;
  }

  const Graph& host_;
  const UnrestrictedCounter& inner_;
  std::map<std::size_t, BlowUp> cache_;
};

// Colour in [0, k) from a 64-bit engine without modulo bias.
std::uint32_t uniform_color(std::mt19937_64& rng, std::uint32_t k) {
  const std::uint64_t threshold = (0 - static_cast<std::uint64_t>(k)) % k;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return static_cast<std::uint32_t>(x % k);
  }
}

Rational ceil_rational(const Rational& r) {
  Count q = boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
  if (Rational(q) < r) q += 1;
  return Rational(q);
}

Rational median(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2;
}

}  // namespace

UnrestrictedCounter default_unrestricted_counter(unsigned threads) {
  return [threads](const Graph& host, const Graph& pattern) {
    return count_bounded_degree(host, Pattern(pattern), threads);
  };
}

Count count_automorphisms(const Graph& h) {
  if (h.order() > kAutomorphismGuard) {
    throw std::invalid_argument("automorphism count supports at most " + std::to_string(kAutomorphismGuard) +
                                " vertices");
  }
  return AutomorphismSearch(h).run();
}

Count count_disjoint_lists(const Graph& host, const Pattern& pat, const UnrestrictedCounter& inner) {
  validate_pattern(pat, host.order());
  const std::size_t k = pat.size();
  if (k > 30) throw std::invalid_argument("disjoint-list counting supports at most 30 pattern vertices");

  constexpr std::uint32_t kNoClass = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> owner(host.order(), kNoClass);
  std::vector<std::vector<Vertex>> classes(k);
  for (std::size_t i = 0; i < k; ++i) {
    classes[i] = materialize(pat.lists[i], host.order());
    if (classes[i].empty()) return 0;
    for (Vertex x : classes[i]) {
      if (owner[x] != kNoClass) {
        throw std::invalid_argument("lists " + std::to_string(owner[x]) + " and " + std::to_string(i) +
                                    " share host vertex " + std::to_string(x));
      }
      owner[x] = static_cast<std::uint32_t>(i);
    }
  }

  // Class graph G': only host edges between classes adjacent in H survive.
  std::vector<Edge> kept;
  for (const Edge& e : host.edges()) {
    if (owner[e.u] == kNoClass || owner[e.v] == kNoClass) continue;
    if (owner[e.u] != owner[e.v] && pat.graph.adjacent(owner[e.u], owner[e.v])) kept.push_back(e);
  }
  const Graph class_graph(host.order(), std::move(kept));

  Count hit_all = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<Vertex> members;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) members.insert(members.end(), classes[i].begin(), classes[i].end());
    }
    if (members.size() < k) continue;
    std::sort(members.begin(), members.end());
    const Count a = inner(induced_subgraph(class_graph, members).graph, pat.graph);
    const int missing = static_cast<int>(k) - std::popcount(mask);
    if (missing % 2 == 0) {
      hit_all += a;
    } else {
      hit_all -= a;
    }
  }

  const Count aut = count_automorphisms(pat.graph);
  if (hit_all % aut != 0) {
    throw ConsistencyError("inclusion-exclusion total " + to_decimal(hit_all) + " is not divisible by |aut(H)| = " +
                           to_decimal(aut));
  }
  return hit_all / aut;
}

BlowUp blow_up(const Graph& host, std::size_t copies) {
  if (copies == 0) throw std::invalid_argument("blow-up needs at least one copy");
  const std::size_t n = host.order();
  BlowUp out;
  out.projection.resize(n * copies);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t c = 0; c < copies; ++c) out.projection[u * copies + c] = static_cast<Vertex>(u);
  }
  std::vector<Edge> edges;
  edges.reserve(host.size() * copies * copies);
  for (const Edge& e : host.edges()) {
    for (std::size_t a = 0; a < copies; ++a) {
      for (std::size_t b = 0; b < copies; ++b) {
        edges.push_back(make_edge(static_cast<Vertex>(e.u * copies + a), static_cast<Vertex>(e.v * copies + b)));
      }
    }
  }
  out.graph = Graph(n * copies, std::move(edges));
  return out;
}

std::vector<std::vector<std::uint32_t>> set_partitions(std::size_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> current(k, 0);
  if (k == 0) {
    out.push_back(current);
    return out;
  }
  partitions_from(1, 1, current, out);
  return out;
}

Quotient quotient_pattern(const Pattern& pat, const std::vector<std::uint32_t>& block) {
  const std::size_t k = pat.size();
  if (block.size() != k) throw std::invalid_argument("partition does not match the pattern size");
  const std::uint32_t blocks = k == 0 ? 0 : *std::max_element(block.begin(), block.end()) + 1;

  Quotient q;
  std::set<std::pair<Vertex, Vertex>> edges;
  for (const Edge& e : pat.graph.edges()) {
    if (block[e.u] == block[e.v]) return q;
    edges.insert(std::minmax(block[e.u], block[e.v]));
  }
  std::vector<Edge> list;
  for (const auto& [a, b] : edges) list.push_back({a, b});

  std::vector<VertexList> lists(blocks);
  for (std::size_t v = 0; v < k; ++v) {
    const VertexList& l = pat.lists[v];
    if (!l) continue;
    VertexList& target = lists[block[v]];
    if (!target) {
      target = *l;
    } else {
      std::vector<Vertex> both;
      std::set_intersection(target->begin(), target->end(), l->begin(), l->end(), std::back_inserter(both));
      target = std::move(both);
    }
  }
  q.pattern = Pattern(Graph(blocks, std::move(list)), std::move(lists));
  q.valid = true;
  return q;
}

Count count_lists_via_blowup(const Graph& host, const Pattern& pat, const UnrestrictedCounter& inner) {
  validate_pattern(pat, host.order());
  if (pat.size() > kBlowupGuard) {
    throw std::invalid_argument("blow-up counting supports at most " + std::to_string(kBlowupGuard) +
                                " pattern vertices");
  }
  BlowupCounter counter(host, inner);
  return counter.count(pat);
}

Count count_colorful(const Graph& host, const Pattern& pat, const Coloring& f, const UnrestrictedCounter& inner) {
  validate_pattern(pat, host.order());
  const std::size_t k = pat.size();
  if (f.size() != host.order()) throw std::invalid_argument("colouring does not cover every host vertex");
  for (std::uint32_t c : f) {
    if (c >= k) throw std::invalid_argument("colour " + std::to_string(c) + " is outside [0, k)");
  }

  std::vector<std::vector<Vertex>> by_color(k);
  for (std::size_t x = 0; x < f.size(); ++x) by_color[f[x]].push_back(static_cast<Vertex>(x));

  std::vector<std::uint32_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0u);
  Count total = 0;
  do {
    std::vector<VertexList> lists(k);
    bool empty = false;
    for (std::size_t i = 0; i < k && !empty; ++i) {
      const auto& shade = by_color[perm[i]];
      std::vector<Vertex> l;
      if (pat.lists[i]) {
        std::set_intersection(pat.lists[i]->begin(), pat.lists[i]->end(), shade.begin(), shade.end(),
                              std::back_inserter(l));
      } else {
        l = shade;
      }
      empty = l.empty();
      lists[i] = std::move(l);
    }
    if (!empty) total += count_disjoint_lists(host, Pattern(pat.graph, std::move(lists)), inner);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

ApproxPlan approx_plan(std::size_t k, const ApproxParams& params) {
  if (params.epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  if (params.delta <= 0 || params.delta >= 1) throw std::invalid_argument("delta must lie strictly between 0 and 1");
  if (k == 0) throw std::invalid_argument("pattern has no vertices");

  ApproxPlan plan;
  Count k_pow = 1;
  for (std::size_t i = 0; i < k; ++i) k_pow *= k;
  plan.p = Rational(factorial(k), k_pow);
  const Rational m = ceil_rational(Rational(3) / (plan.p * params.epsilon * params.epsilon));
  if (m > Rational(std::numeric_limits<std::uint32_t>::max())) {
    throw std::invalid_argument("epsilon too small: more than 2^32 samples per group");
  }
  plan.samples = static_cast<std::uint64_t>(boost::multiprecision::numerator(m));
  const double delta = static_cast<double>(params.delta);
  plan.groups = static_cast<std::uint64_t>(std::ceil(8.0 * std::log(1.0 / delta)));
  plan.groups = std::max<std::uint64_t>(plan.groups, 1);
  return plan;
}

ApproxResult approx_count(const Graph& host, const Pattern& pat, const ApproxParams& params,
                          const UnrestrictedCounter& inner) {
  validate_pattern(pat, host.order());
  const std::size_t k = pat.size();
  ApproxResult result;
  result.plan = approx_plan(k, params);

  // Only vertices that some list admits can carry an image.
  std::vector<Vertex> relevant;
  if (std::any_of(pat.lists.begin(), pat.lists.end(), [](const VertexList& l) { return !l; })) {
    relevant = materialize(std::nullopt, host.order());
  } else {
    std::set<Vertex> all;
    for (const VertexList& l : pat.lists) all.insert(l->begin(), l->end());
    relevant.assign(all.begin(), all.end());
  }

  std::unordered_map<std::string, Count> memo;
  Coloring f(host.order(), 0);
  std::string key(relevant.size(), '\0');
  const Rational scale = result.plan.p * result.plan.samples;

  std::vector<Rational> group_means;
  group_means.reserve(result.plan.groups);
  for (std::uint64_t g = 0; g < result.plan.groups; ++g) {
    std::seed_seq seq{static_cast<std::uint32_t>(params.seed), static_cast<std::uint32_t>(params.seed >> 32),
                      static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(g >> 32)};
    std::mt19937_64 rng(seq);
    Count sum = 0;
    for (std::uint64_t s = 0; s < result.plan.samples; ++s) {
      for (std::size_t r = 0; r < relevant.size(); ++r) {
        const std::uint32_t c = uniform_color(rng, static_cast<std::uint32_t>(k));
        f[relevant[r]] = c;
        key[r] = static_cast<char>(c);
      }
      auto it = memo.find(key);
      if (it != memo.end()) {
        sum += it->second;
        continue;
      }
      Count n_f = count_colorful(host, pat, f, inner);
      ++result.distinct_colorings;
      if (memo.size() < kMemoLimit && k <= 256) memo.emplace(key, n_f);
      sum += n_f;
    }
    group_means.push_back(Rational(sum) / scale);
  }
  result.estimate = median(std::move(group_means));
  return result;
}

}  // namespace mlmotif
