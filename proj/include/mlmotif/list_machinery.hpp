#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mlmotif/count.hpp"
#include "mlmotif/graph.hpp"
#include "mlmotif/pattern.hpp"

namespace mlmotif {

/// Counts embeddings of `pattern` into `host` with no list restriction.
using UnrestrictedCounter = std::function<Count(const Graph& host, const Graph& pattern)>;

/// count_bounded_degree with full lists.
UnrestrictedCounter default_unrestricted_counter(unsigned threads = 1);

inline constexpr std::size_t kAutomorphismGuard = 12;
inline constexpr std::size_t kBlowupGuard = 8;

/// |aut(h)| by brute force over bijections. Throws for k > kAutomorphismGuard.
Count count_automorphisms(const Graph& h);

/// List embeddings for pairwise disjoint lists, obtained from 2^k
/// unrestricted counts on the class graph by inclusion-exclusion.
/// Throws std::invalid_argument if two lists intersect and ConsistencyError
/// if the total is not divisible by |aut(H)|.
Count count_disjoint_lists(const Graph& host, const Pattern& pat, const UnrestrictedCounter& inner);

struct BlowUp {
  Graph graph;
  std::vector<Vertex> projection;  // copy -> original vertex
};

/// Copy c (0-based) of vertex u gets id u * copies + c.
BlowUp blow_up(const Graph& host, std::size_t copies);

/// Ordered set partitions of {0..k-1} as restricted growth strings:
/// block[v] is the block of v, first occurrences numbered 0, 1, 2, ...
std::vector<std::vector<std::uint32_t>> set_partitions(std::size_t k);

struct Quotient {
  Pattern pattern;
  bool valid = false;  // false when some block contains a pattern edge
};

/// Identifies the vertices of each block; lists are intersected.
Quotient quotient_pattern(const Pattern& pat, const std::vector<std::uint32_t>& block);

/// General list embeddings: count on the k-fold blow-up with disjoint
/// lists, then subtract the collapsed images signature by signature.
/// Throws std::invalid_argument for k > kBlowupGuard.
Count count_lists_via_blowup(const Graph& host, const Pattern& pat, const UnrestrictedCounter& inner);

/// Colours are 0..k-1, one per host vertex.
using Coloring = std::vector<std::uint32_t>;

/// List embeddings whose image receives k distinct colours.
Count count_colorful(const Graph& host, const Pattern& pat, const Coloring& f, const UnrestrictedCounter& inner);

struct ApproxParams {
  Rational epsilon;
  Rational delta;
  std::uint64_t seed = 0;
};

struct ApproxPlan {
  Rational p;                  // k! / k^k
  std::uint64_t samples = 0;   // m, colourings per group
  std::uint64_t groups = 0;    // g
};

/// Throws std::invalid_argument unless epsilon > 0 and 0 < delta < 1.
ApproxPlan approx_plan(std::size_t k, const ApproxParams& params);

struct ApproxResult {
  Rational estimate;
  ApproxPlan plan;
  std::uint64_t distinct_colorings = 0;  // colourings actually counted
};

/// Median over groups of the mean of count_colorful / p on uniformly random
/// colourings. Deterministic for a given seed.
ApproxResult approx_count(const Graph& host, const Pattern& pat, const ApproxParams& params,
                          const UnrestrictedCounter& inner);

}  // namespace mlmotif
