#pragma once

#include "mlmotif/count.hpp"
#include "mlmotif/graph.hpp"
#include "mlmotif/pattern.hpp"

namespace mlmotif {

// Brute-force reference for list embeddings. Every host vertex is tried at
// every level, so this is only meant for desk-scale hosts (n up to ~30) and
// serves as ground truth for the other counters.

Count count_embeddings_oracle(const Graph& host, const Pattern& pat);
bool exists_embedding_oracle(const Graph& host, const Pattern& pat);

}  // namespace mlmotif
