#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mlmotif/count.hpp"
#include "mlmotif/decomposition.hpp"
#include "mlmotif/gadgets.hpp"
#include "mlmotif/geometric.hpp"
#include "mlmotif/graph.hpp"
#include "mlmotif/pattern.hpp"

namespace mlmotif {

/// Malformed input. line() is 1-based, or 0 when the problem is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct HostInstance {
  LayeredGraph graph;
  std::optional<GeometricLayout> layout;
  std::vector<LayerId> layer_labels;  // raw label of each dense layer id
};

/// Records: `n <count>`, `e <u> <v> [layer]`, `pos <v> <x> <y>`. Without an
/// `n` record the vertex count is one more than the largest id mentioned.
/// Layer labels are renumbered 0..s-1 in increasing order.
HostInstance parse_host(std::string_view text);

/// Records: `k <count>`, `e <i> <j>`, `list <i> <ids...>`. Omitted lists
/// mean "every host vertex".
Pattern parse_pattern(std::string_view text, std::size_t host_order);

/// Records: `n <count>`, `color <v> <c>` with c in 1..k, `e <u> <v>`.
CliqueInstance parse_clique_instance(std::string_view text);

std::string serialize_host(const LayeredGraph& g, const GeometricLayout* layout = nullptr);
std::string serialize_pattern(const Pattern& pat);
std::string serialize_clique_instance(const CliqueInstance& inst);

/// Decimal when the expansion terminates, otherwise `p/q`.
std::string exact_text(const Rational& value);

/// {"count": "<decimal>", "method": "<name>", "stats": {...}}
nlohmann::json result_json(const Count& count, std::string_view method, nlohmann::json stats = nlohmann::json::object());

/// Header `step,removed_vertex,max_degree`, one row per record.
std::string peel_csv(const PeelTrace& trace);

/// Anchors, path blocks and decoration cycles of a gadget pair.
nlohmann::json gadget_registry_json(const GadgetHost& host, const GadgetPattern& pat);

/// Whole file as text. Throws std::runtime_error when it cannot be read.
std::string read_text_file(const std::string& path);

}  // namespace mlmotif
