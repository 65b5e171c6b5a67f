#include "mlmotif/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace mlmotif {

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const std::size_t end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    Line parsed{number, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) parsed.tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (!parsed.tokens.empty()) out.push_back(std::move(parsed));
  }
  return out;
}

std::uint64_t to_uint(const Line& line, std::string_view token, const char* what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line.number, std::string("expected a non-negative integer for ") + what + ", got '" +
                                      std::string(token) + "'");
  }
  return value;
}

Vertex to_vertex(const Line& line, std::string_view token, const char* what) {
  const std::uint64_t v = to_uint(line, token, what);
  if (v >= kNoVertex) throw ParseError(line.number, std::string(what) + " is too large");
  return static_cast<Vertex>(v);
}

void expect_arity(const Line& line, std::size_t min, std::size_t max, const char* usage) {
  const std::size_t args = line.tokens.size() - 1;
  if (args < min || args > max) throw ParseError(line.number, std::string("expected '") + usage + "'");
}

[[noreturn]] void unknown_record(const Line& line) {
  throw ParseError(line.number, "unknown record '" + std::string(line.tokens[0]) + "'");
}

// Tracks the `n` record and the largest id seen for the implicit vertex count.
class VertexRange {
 public:
  void declare(const Line& line) {
    expect_arity(line, 1, 1, "n <count>");
    if (declared_) throw ParseError(line.number, "repeated 'n' record");
    declared_ = to_uint(line, line.tokens[1], "vertex count");
    if (*declared_ >= kNoVertex) throw ParseError(line.number, "vertex count is too large");
  }

  void note(const Line& line, Vertex v) { mentions_.push_back({line.number, v}); }

  std::size_t resolve() const {
    if (!declared_) {
      std::size_t n = 0;
      for (const auto& [ln, v] : mentions_) n = std::max<std::size_t>(n, std::size_t{v} + 1);
      return n;
    }
    for (const auto& [ln, v] : mentions_) {
      if (v >= *declared_) {
        throw ParseError(ln, "vertex " + std::to_string(v) + " is outside 0.." +
                                 (*declared_ == 0 ? std::string("(empty)") : std::to_string(*declared_ - 1)));
      }
    }
    return *declared_;
  }

 private:
  std::optional<std::uint64_t> declared_;
  std::vector<std::pair<std::size_t, Vertex>> mentions_;
};

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

HostInstance parse_host(std::string_view text) {
  VertexRange range;
  struct RawEdge {
    std::size_t line;
    Vertex u, v;
    std::uint64_t label;
  };
  std::vector<RawEdge> raw;
  std::map<Vertex, std::pair<std::size_t, Point>> positions;

  for (const Line& line : tokenize(text)) {
    const std::string_view kind = line.tokens[0];
    if (kind == "n") {
      range.declare(line);
    } else if (kind == "e") {
      expect_arity(line, 2, 3, "e <u> <v> [layer]");
      const Vertex u = to_vertex(line, line.tokens[1], "edge endpoint");
      const Vertex v = to_vertex(line, line.tokens[2], "edge endpoint");
      const std::uint64_t label = line.tokens.size() > 3 ? to_uint(line, line.tokens[3], "layer") : 0;
      if (u == v) throw ParseError(line.number, "self-loop at vertex " + std::to_string(u));
      range.note(line, u);
      range.note(line, v);
      raw.push_back({line.number, u, v, label});
    } else if (kind == "pos") {
      expect_arity(line, 3, 3, "pos <v> <x> <y>");
      const Vertex v = to_vertex(line, line.tokens[1], "vertex");
      Point p;
      try {
        p.x = parse_rational(line.tokens[2]);
        p.y = parse_rational(line.tokens[3]);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line.number, e.what());
      }
      if (positions.count(v)) throw ParseError(line.number, "second position for vertex " + std::to_string(v));
      range.note(line, v);
      positions.emplace(v, std::make_pair(line.number, std::move(p)));
    } else {
      unknown_record(line);
    }
  }

  const std::size_t n = range.resolve();
  std::set<std::uint64_t> labels;
  for (const RawEdge& e : raw) labels.insert(e.label);
  std::map<std::uint64_t, LayerId> dense;
  HostInstance out;
  for (std::uint64_t l : labels) {
    dense.emplace(l, static_cast<LayerId>(dense.size()));
    out.layer_labels.push_back(static_cast<LayerId>(l));
  }
  std::vector<LayeredEdge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& e : raw) edges.push_back({e.u, e.v, dense.at(e.label)});
  out.graph = LayeredGraph(n, edges, std::max<std::size_t>(1, dense.size()));
  if (out.layer_labels.empty()) out.layer_labels.push_back(0);

  if (!positions.empty()) {
    if (positions.size() != n) {
      for (std::size_t v = 0; v < n; ++v) {
        if (!positions.count(static_cast<Vertex>(v))) {
          throw ParseError(0, "positions are given for some vertices but not for vertex " + std::to_string(v));
        }
      }
    }
    GeometricLayout layout;
    layout.positions.reserve(n);
    for (auto& [v, entry] : positions) layout.positions.push_back(entry.second);
    out.layout = std::move(layout);
  }
  return out;
}

Pattern parse_pattern(std::string_view text, std::size_t host_order) {
  std::optional<std::size_t> k;
  std::vector<std::pair<std::size_t, Edge>> edges;
  std::map<std::size_t, std::pair<std::size_t, std::vector<Vertex>>> lists;

  for (const Line& line : tokenize(text)) {
    const std::string_view kind = line.tokens[0];
    if (kind == "k") {
      expect_arity(line, 1, 1, "k <count>");
      if (k) throw ParseError(line.number, "repeated 'k' record");
      k = to_uint(line, line.tokens[1], "pattern size");
      if (*k == 0) throw ParseError(line.number, "pattern must have at least one vertex");
      if (*k >= kNoVertex) throw ParseError(line.number, "pattern size is too large");
    } else if (kind == "e") {
      expect_arity(line, 2, 2, "e <i> <j>");
      const Vertex i = to_vertex(line, line.tokens[1], "pattern vertex");
      const Vertex j = to_vertex(line, line.tokens[2], "pattern vertex");
      if (i == j) throw ParseError(line.number, "self-loop at pattern vertex " + std::to_string(i));
      edges.push_back({line.number, make_edge(i, j)});
    } else if (kind == "list") {
      if (line.tokens.size() < 2) throw ParseError(line.number, "expected 'list <i> <ids...>'");
      const std::size_t i = to_uint(line, line.tokens[1], "pattern vertex");
      if (lists.count(i)) throw ParseError(line.number, "second list for pattern vertex " + std::to_string(i));
      std::vector<Vertex> ids;
      for (std::size_t t = 2; t < line.tokens.size(); ++t) {
        const Vertex x = to_vertex(line, line.tokens[t], "host vertex");
        if (x >= host_order) {
          throw ParseError(line.number, "list names host vertex " + std::to_string(x) + " but the host has " +
                                            std::to_string(host_order) + " vertices");
        }
        ids.push_back(x);
      }
      lists.emplace(i, std::make_pair(line.number, std::move(ids)));
    } else {
      unknown_record(line);
    }
  }
  if (!k) throw ParseError(0, "missing 'k' record");

  std::set<std::pair<Vertex, Vertex>> seen;
  std::vector<Edge> unique;
  for (const auto& [ln, e] : edges) {
    if (e.v >= *k) throw ParseError(ln, "pattern vertex " + std::to_string(e.v) + " is outside 0.." + std::to_string(*k - 1));
    if (seen.insert({e.u, e.v}).second) unique.push_back(e);
  }
  std::vector<VertexList> vertex_lists(*k);
  for (auto& [i, entry] : lists) {
    if (i >= *k) throw ParseError(entry.first, "list for pattern vertex " + std::to_string(i) + " but k = " + std::to_string(*k));
    vertex_lists[i] = std::move(entry.second);
  }
  return Pattern(Graph(*k, std::move(unique)), std::move(vertex_lists));
}

CliqueInstance parse_clique_instance(std::string_view text) {
  VertexRange range;
  std::vector<std::pair<std::size_t, Edge>> edges;
  std::map<Vertex, std::pair<std::size_t, std::uint64_t>> colors;

  for (const Line& line : tokenize(text)) {
    const std::string_view kind = line.tokens[0];
    if (kind == "n") {
      range.declare(line);
    } else if (kind == "e") {
      expect_arity(line, 2, 2, "e <u> <v>");
      const Vertex u = to_vertex(line, line.tokens[1], "edge endpoint");
      const Vertex v = to_vertex(line, line.tokens[2], "edge endpoint");
      if (u == v) throw ParseError(line.number, "self-loop at vertex " + std::to_string(u));
      range.note(line, u);
      range.note(line, v);
      edges.push_back({line.number, make_edge(u, v)});
    } else if (kind == "color") {
      expect_arity(line, 2, 2, "color <v> <c>");
      const Vertex v = to_vertex(line, line.tokens[1], "vertex");
      const std::uint64_t c = to_uint(line, line.tokens[2], "colour");
      if (c == 0) throw ParseError(line.number, "colours start at 1");
      if (colors.count(v)) throw ParseError(line.number, "second colour for vertex " + std::to_string(v));
      range.note(line, v);
      colors.emplace(v, std::make_pair(line.number, c));
    } else {
      unknown_record(line);
    }
  }

  const std::size_t n = range.resolve();
  CliqueInstance inst;
  inst.color.assign(n, 0);
  std::set<std::uint64_t> used;
  for (std::size_t v = 0; v < n; ++v) {
    auto it = colors.find(static_cast<Vertex>(v));
    if (it == colors.end()) throw ParseError(0, "vertex " + std::to_string(v) + " has no colour");
    used.insert(it->second.second);
    inst.color[v] = static_cast<std::uint32_t>(it->second.second - 1);
  }
  inst.k = used.size();
  if (!used.empty() && *used.rbegin() != used.size()) {
    throw ParseError(0, "colours must be exactly 1..k; " + std::to_string(used.size()) + " distinct colours but the largest is " +
                            std::to_string(*used.rbegin()));
  }
  if (inst.k < 2) throw ParseError(0, "a clique instance needs at least two colours");

  std::set<std::pair<Vertex, Vertex>> seen;
  std::vector<Edge> unique;
  for (const auto& [ln, e] : edges) {
    if (!seen.insert({e.u, e.v}).second) throw ParseError(ln, "repeated edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
    unique.push_back(e);
  }
  inst.graph = Graph(n, std::move(unique));
  return inst;
}

std::string exact_text(const Rational& value) {
  Count den = boost::multiprecision::denominator(value);
  while (den % 2 == 0) den /= 2;
  while (den % 5 == 0) den /= 5;
  return den == 1 ? to_decimal(value, std::numeric_limits<unsigned>::max()) : to_fraction(value);
}

std::string serialize_host(const LayeredGraph& g, const GeometricLayout* layout) {
  std::ostringstream out;
  out << "n " << g.order() << '\n';
  for (const LayeredEdge& e : g.layered_edges()) out << "e " << e.u << ' ' << e.v << ' ' << e.layer << '\n';
  if (layout) {
    for (std::size_t v = 0; v < layout->positions.size(); ++v) {
      out << "pos " << v << ' ' << exact_text(layout->positions[v].x) << ' ' << exact_text(layout->positions[v].y)
          << '\n';
    }
  }
  return out.str();
}

std::string serialize_pattern(const Pattern& pat) {
  std::ostringstream out;
  out << "k " << pat.size() << '\n';
  for (const Edge& e : pat.graph.edges()) out << "e " << e.u << ' ' << e.v << '\n';
  for (std::size_t i = 0; i < pat.lists.size(); ++i) {
    if (!pat.lists[i]) continue;
    out << "list " << i;
    for (Vertex x : *pat.lists[i]) out << ' ' << x;
    out << '\n';
  }
  return out.str();
}

std::string serialize_clique_instance(const CliqueInstance& inst) {
  std::ostringstream out;
  out << "n " << inst.graph.order() << '\n';
  for (std::size_t v = 0; v < inst.color.size(); ++v) out << "color " << v << ' ' << inst.color[v] + 1 << '\n';
  for (const Edge& e : inst.graph.edges()) out << "e " << e.u << ' ' << e.v << '\n';
  return out.str();
}

nlohmann::json result_json(const Count& count, std::string_view method, nlohmann::json stats) {
  nlohmann::json out;
  out["count"] = to_decimal(count);
  out["method"] = std::string(method);
  out["stats"] = std::move(stats);
  return out;
}

std::string peel_csv(const PeelTrace& trace) {
  std::ostringstream out;
  out << "step,removed_vertex,max_degree\n";
  for (const PeelRecord& r : trace.records) out << r.step << ',' << r.removed << ',' << r.max_degree << '\n';
  return out.str();
}

nlohmann::json gadget_registry_json(const GadgetHost& host, const GadgetPattern& pat) {
  using nlohmann::json;
  auto cycles = [](const std::vector<DecorationCycle>& list) {
    json out = json::array();
    for (const DecorationCycle& c : list) {
      out.push_back({{"class", c.cls}, {"block", c.block}, {"attach", c.attach}, {"length", c.length()},
                     {"vertices", c.path}});
    }
    return out;
  };

  json pattern;
  pattern["k"] = pat.k;
  pattern["pairs"] = pat.pairs;
  pattern["base_order"] = pat.base_order;
  pattern["order"] = pat.graph.order();
  json anchors = json::array();
  for (std::size_t i = 0; i < pat.anchor.size(); ++i) {
    for (std::size_t j = 0; j < pat.anchor[i].size(); ++j) {
      anchors.push_back({{"class", i + 1}, {"block", j + 1}, {"vertex", pat.anchor[i][j]}});
    }
  }
  pattern["anchors"] = std::move(anchors);
  pattern["cycles"] = cycles(pat.cycles);

  json gadget_host;
  gadget_host["base_order"] = host.base_order;
  gadget_host["order"] = host.graph.order();
  gadget_host["layers"] = {{"0", "star forest"}, {"1", "matching"}};
  json host_anchors = json::array();
  for (std::size_t v = 0; v < host.anchor.size(); ++v) {
    for (std::size_t j = 0; j < host.anchor[v].size(); ++j) {
      host_anchors.push_back({{"source", v}, {"class", host.instance.color[v] + 1}, {"block", j + 1},
                              {"vertex", host.anchor[v][j]}});
    }
  }
  gadget_host["anchors"] = std::move(host_anchors);
  json paths = json::array();
  for (const auto& [key, start] : host.path_start) {
    const auto& [v, e, j] = key;
    const Edge& edge = host.instance.graph.edges()[e];
    paths.push_back({{"source", v}, {"edge", {edge.u, edge.v}}, {"block", j},
                     {"vertices", {start, start + 1, start + 2, start + 3, start + 4}}});
  }
  gadget_host["paths"] = std::move(paths);
  gadget_host["cycles"] = cycles(host.cycles);

  return {{"pattern", std::move(pattern)}, {"host", std::move(gadget_host)}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace mlmotif
