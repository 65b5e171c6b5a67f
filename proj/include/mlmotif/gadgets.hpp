#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mlmotif/graph.hpp"
#include "mlmotif/pattern.hpp"

namespace mlmotif {

/// A Multicolour Clique instance. Classes are 0..k-1 here; files use 1..k.
struct CliqueInstance {
  Graph graph;
  std::vector<std::uint32_t> color;
  std::size_t k = 0;

  std::vector<Vertex> members(std::uint32_t cls) const;
};

/// Throws std::invalid_argument unless k >= 2, every vertex has a colour
/// below k and every class is non-empty.
void validate_clique_instance(const CliqueInstance& inst);

/// One vertex per class, pairwise adjacent.
bool is_multicolour_clique(const CliqueInstance& inst, const std::vector<Vertex>& pick);

/// All unordered class pairs {i < j} in lexicographic order (0-based).
std::vector<std::pair<std::uint32_t, std::uint32_t>> pair_list(std::size_t k);

/// An odd cycle hung on one existing vertex: attach, path[0], ..., path.back(), attach.
struct DecorationCycle {
  std::size_t cls = 0;    // i, 1-based
  std::size_t block = 0;  // j, 1-based
  Vertex attach = 0;
  std::vector<Vertex> path;

  std::size_t length() const { return path.size() + 1; }
};

/// 2((i-1) C + j) + 1 with C = k choose 2.
std::size_t decoration_length(std::size_t k, std::size_t cls, std::size_t block);

struct GadgetPattern {
  Graph graph;
  std::size_t k = 0;
  std::size_t pairs = 0;      // C
  std::size_t base_order = 0; // vertices of the undecorated pattern
  std::vector<std::vector<Vertex>> anchor;  // anchor[i-1][j-1] = u_{i,j}
  std::vector<DecorationCycle> cycles;

  /// Vertex p (1-based) of path i (1-based).
  Vertex path_vertex(std::size_t i, std::size_t p) const {
    return static_cast<Vertex>((i - 1) * 6 * pairs + (p - 1));
  }
};

struct GadgetHost {
  LayeredGraph graph;  // layer 0: star forest E_1, layer 1: matching E_2
  CliqueInstance instance;
  std::size_t pairs = 0;
  std::size_t base_order = 0;
  std::vector<std::vector<Vertex>> anchor;  // anchor[v][j-1] = v^j
  // (v, edge index in G', j) -> id of P^j_{v,e}[1]; P[t] is that id + t - 1.
  std::map<std::tuple<Vertex, std::size_t, std::size_t>, Vertex> path_start;
  std::vector<DecorationCycle> cycles;
};

/// Throws std::invalid_argument for k < 2.
GadgetPattern build_pattern(std::size_t k);

GadgetHost build_host(const CliqueInstance& inst);

/// C * sum over v of (1 + 5 d(v)).
std::size_t expected_host_base_order(const CliqueInstance& inst);

/// The vertices below base_order with the edges among them.
Graph undecorated(const GadgetHost& host);
Graph undecorated(const GadgetPattern& pat);

/// The embedding of the decorated pattern built from a multicolour clique;
/// pick[i] is the chosen vertex of class i. Throws std::invalid_argument if
/// pick is not a multicolour clique.
Embedding clique_to_embedding(const CliqueInstance& inst, const std::vector<Vertex>& pick, const GadgetHost& host,
                              const GadgetPattern& pat);

struct GadgetCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct GadgetReport {
  std::vector<GadgetCheck> checks;

  bool ok() const;
  const GadgetCheck* find(const std::string& name) const;
};

/// Structural checks: vertex-count formulas, bipartite undecorated host,
/// decoration cycles present with the prescribed lengths, anchor distances,
/// and the star-forest / matching split of the layers.
GadgetReport validate_gadget(const GadgetHost& host, const GadgetPattern& pat);

}  // namespace mlmotif
