#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlmotif/count.hpp"
#include "mlmotif/decomposition.hpp"
#include "mlmotif/exact_counters.hpp"
#include "mlmotif/gadgets.hpp"
#include "mlmotif/instance_io.hpp"
#include "mlmotif/list_machinery.hpp"
#include "mlmotif/oracle.hpp"

using namespace mlmotif;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInternal = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

HostInstance load_host(const std::string& path) {
  HostInstance host = parse_host(read_text_file(path));
  for (const std::string& w : host.graph.warnings()) std::cerr << "warning: " << path << ": " << w << '\n';
  return host;
}

Method method_arg(const std::string& text) {
  auto m = parse_method(text);
  if (!m) throw UsageError("unknown method '" + text + "'");
  return *m;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

json vc_stats_json(const VcLayerStats& s) {
  return {{"cover", s.cover},
          {"cover_size", s.cover.size()},
          {"partial_maps", s.partial_maps},
          {"inner_calls", s.inner_calls},
          {"call_budget", to_decimal(s.call_budget)},
          {"dirty_inner_calls", s.dirty_inner_calls}};
}

struct CountArgs {
  std::string host;
  std::string pattern;
  std::string method = "auto";
  LayerId cover_layer = 0;
  std::string inner = "auto";
  std::size_t cover_guard = kVertexCoverGuard;
};

int cmd_count(const CountArgs& a, bool as_json, unsigned threads) {
  const HostInstance host = load_host(a.host);
  const Pattern pat = parse_pattern(read_text_file(a.pattern), host.graph.order());

  const Method method = method_arg(a.method);
  CountStrategy strategy = CountStrategy::of(method);
  if (method == Method::vc_layer) {
    const Method inner = method_arg(a.inner);
    if (inner == Method::vc_layer) throw UsageError("--inner vc-layer is not supported from the command line");
    strategy = CountStrategy::vc_layer(a.cover_layer, CountStrategy::of(inner));
  }
  CountOptions options;
  options.threads = threads;
  options.cover_guard = a.cover_guard;

  DispatchReport report;
  const Count c = count_dispatch(host.graph, host.layout ? &*host.layout : nullptr, pat, strategy, &report, options);
  for (const std::string& note : report.notes) std::cerr << note << '\n';

  if (as_json) {
    json stats = {{"host_vertices", host.graph.order()},
                  {"host_edges", host.graph.flat().size()},
                  {"layers", host.graph.layer_count()},
                  {"pattern_vertices", pat.size()},
                  {"resolved", report.resolved}};
    if (report.vc_layer) stats["vc_layer"] = vc_stats_json(*report.vc_layer);
    std::cout << result_json(c, method_name(method), stats).dump(2) << '\n';
  } else {
    std::cout << "count=" << to_decimal(c) << '\n';
  }
  return kExitOk;
}

struct ApproxArgs {
  std::string host;
  std::string pattern;
  std::string epsilon;
  std::string delta;
  std::uint64_t seed = 0;
  std::string method = "bounded-degree";
};

int cmd_approx(const ApproxArgs& a, bool as_json, unsigned threads) {
  ApproxParams params;
  try {
    params.epsilon = parse_rational(a.epsilon);
    params.delta = parse_rational(a.delta);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  params.seed = a.seed;
  if (params.epsilon <= 0) throw UsageError("--epsilon must be positive");
  if (params.delta <= 0 || params.delta >= 1) throw UsageError("--delta must lie strictly between 0 and 1");

  const HostInstance host = load_host(a.host);
  const Pattern pat = parse_pattern(read_text_file(a.pattern), host.graph.order());

  UnrestrictedCounter inner;
  switch (method_arg(a.method)) {
    case Method::oracle:
      inner = [](const Graph& g, const Graph& h) { return count_embeddings_oracle(g, Pattern(h)); };
      break;
    case Method::bounded_degree:
    case Method::automatic:
      inner = default_unrestricted_counter(threads);
      break;
    default:
      throw UsageError("approx supports --method oracle, bounded-degree or auto");
  }

  const ApproxResult r = approx_count(host.graph.flat(), pat, params, inner);
  if (as_json) {
    json out = {{"estimate", to_decimal(r.estimate)},
                {"fraction", to_fraction(r.estimate)},
                {"method", "color-coding"},
                {"stats",
                 {{"p", to_fraction(r.plan.p)},
                  {"samples_per_group", r.plan.samples},
                  {"groups", r.plan.groups},
                  {"distinct_colorings", r.distinct_colorings},
                  {"seed", a.seed}}}};
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "estimate=" << to_decimal(r.estimate) << '\n'
              << "fraction=" << to_fraction(r.estimate) << '\n'
              << "samples_per_group=" << r.plan.samples << '\n'
              << "groups=" << r.plan.groups << '\n';
  }
  return kExitOk;
}

int cmd_peel(const std::string& host_path, std::size_t steps, const std::string& csv, bool as_json) {
  const HostInstance host = load_host(host_path);
  if (steps > host.graph.order()) {
    throw UsageError("--steps " + std::to_string(steps) + " exceeds the host's " +
                     std::to_string(host.graph.order()) + " vertices");
  }
  const PeelTrace trace = peel(host.graph.flat(), steps);
  const std::string table = peel_csv(trace);
  if (!csv.empty()) write_file(csv, table);
  if (as_json) {
    json rows = json::array();
    for (const PeelRecord& r : trace.records) {
      rows.push_back({{"step", r.step}, {"removed_vertex", r.removed}, {"max_degree", r.max_degree}});
    }
    std::cout << json{{"records", rows}}.dump(2) << '\n';
  } else if (csv.empty()) {
    std::cout << table;
  }
  return kExitOk;
}

int cmd_decompose(const std::string& host_path, std::size_t max_degree, bool as_json) {
  const HostInstance host = load_host(host_path);
  const Graph& g = host.graph.flat();
  const AbdSplit split = abd_split(g, max_degree);
  const std::size_t abd = abd_parameter(g);
  if (as_json) {
    std::cout << json{{"high_degree", split.high_degree},
                      {"size", split.high_degree.size()},
                      {"residual_max_degree", split.residual_max_degree},
                      {"abd_parameter", abd}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "X_G=";
    for (std::size_t i = 0; i < split.high_degree.size(); ++i) std::cout << (i ? " " : "") << split.high_degree[i];
    std::cout << '\n'
              << "size=" << split.high_degree.size() << '\n'
              << "residual_max_degree=" << split.residual_max_degree << '\n'
              << "abd_parameter=" << abd << '\n';
  }
  return kExitOk;
}

int cmd_gadget(const std::string& clique_path, const std::string& prefix, bool verify, bool as_json) {
  const CliqueInstance inst = parse_clique_instance(read_text_file(clique_path));
  const GadgetPattern pat = build_pattern(inst.k);
  const GadgetHost host = build_host(inst);

  write_file(prefix + ".host", serialize_host(host.graph));
  write_file(prefix + ".pattern", serialize_pattern(Pattern(pat.graph)));
  write_file(prefix + ".registry.json", gadget_registry_json(host, pat).dump(2) + "\n");

  json out = {{"k", inst.k},
              {"pattern_vertices", pat.graph.order()},
              {"host_vertices", host.graph.order()},
              {"host_edges", host.graph.flat().size()},
              {"files", {prefix + ".host", prefix + ".pattern", prefix + ".registry.json"}}};
  bool ok = true;
  if (verify) {
    const GadgetReport report = validate_gadget(host, pat);
    ok = report.ok();
    json checks = json::array();
    for (const GadgetCheck& c : report.checks) {
      checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    }
    out["checks"] = std::move(checks);
    out["ok"] = ok;
  }

  if (as_json) {
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "k=" << inst.k << '\n'
              << "pattern_vertices=" << pat.graph.order() << '\n'
              << "host_vertices=" << host.graph.order() << '\n';
    if (verify) {
      for (const auto& c : out["checks"]) {
        std::cout << "check " << c["name"].get<std::string>() << ": " << (c["ok"].get<bool>() ? "ok" : "FAIL");
        if (!c["detail"].get<std::string>().empty()) std::cout << " (" << c["detail"].get<std::string>() << ")";
        std::cout << '\n';
      }
    }
  }
  return ok ? kExitOk : kExitInternal;
}

// Uniform in [0, bound) without modulo bias.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

// True with probability p (p clamped to [0, 1]), decided on a 2^-53 grid.
bool bernoulli(std::mt19937_64& rng, const Rational& p) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  const Rational scaled = p * Rational(Count(1) << 53);
  const Count cut = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
  return Count(rng() >> 11) < cut;
}

struct GenArgs {
  std::size_t n = 0;
  std::size_t layers = 1;
  std::vector<std::string> models;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a, bool as_json) {
  if (a.layers == 0) throw UsageError("--layers must be at least 1");
  std::vector<std::string> models = a.models;
  if (models.empty()) models.push_back("gnp:0.2");
  if (models.size() == 1) models.resize(a.layers, models.front());
  if (models.size() != a.layers) {
    throw UsageError("give one --model for all layers or exactly one per layer (" + std::to_string(a.layers) + ")");
  }

  std::mt19937_64 rng(a.seed);
  const std::size_t n = a.n;
  std::vector<LayeredEdge> edges;
  std::optional<GeometricLayout> layout;

  auto need_layout = [&]() -> const GeometricLayout& {
    if (!layout) {
      layout.emplace();
      for (std::size_t v = 0; v < n; ++v) {
        const Rational x(static_cast<long long>(uniform_below(rng, 1000)), 1000);
        const Rational y(static_cast<long long>(uniform_below(rng, 1000)), 1000);
        layout->positions.push_back({x, y});
      }
    }
    return *layout;
  };

  for (std::size_t l = 0; l < a.layers; ++l) {
    const std::string& model = models[l];
    const auto colon = model.find(':');
    const std::string kind = model.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : model.substr(colon + 1);
    const LayerId layer = static_cast<LayerId>(l);

    if (kind == "gnp" || kind == "geometric") {
      if (arg.empty()) throw UsageError("model '" + kind + "' needs a parameter");
      Rational param;
      try {
        param = parse_rational(arg);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      if (param < 0) throw UsageError("model parameter must be non-negative");
      if (kind == "gnp") {
        for (std::size_t u = 0; u < n; ++u) {
          for (std::size_t v = u + 1; v < n; ++v) {
            if (bernoulli(rng, param)) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), layer});
          }
        }
      } else {
        const GeometricLayout& pos = need_layout();
        const Rational r2 = param * param;
        for (std::size_t u = 0; u < n; ++u) {
          for (std::size_t v = u + 1; v < n; ++v) {
            const Rational dx = pos.positions[u].x - pos.positions[v].x;
            const Rational dy = pos.positions[u].y - pos.positions[v].y;
            if (dx * dx + dy * dy <= r2) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), layer});
          }
        }
      }
    } else if (kind == "star-forest" || kind == "matching") {
      std::vector<Vertex> order(n);
      std::iota(order.begin(), order.end(), Vertex{0});
      for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);
      if (kind == "matching") {
        for (std::size_t i = 0; i + 1 < n; i += 2) edges.push_back({order[i], order[i + 1], layer});
      } else {
        std::size_t i = 0;
        while (i < n) {
          const std::size_t size = 1 + uniform_below(rng, 5);  // centre plus up to 4 leaves
          const Vertex centre = order[i];
          for (std::size_t j = i + 1; j < std::min(n, i + size); ++j) edges.push_back({centre, order[j], layer});
          i += size;
        }
      }
    } else {
      throw UsageError("unknown model '" + model + "'");
    }
  }

  const LayeredGraph g(n, edges, a.layers);
  const std::string text = serialize_host(g, layout ? &*layout : nullptr);
  if (!a.out.empty()) write_file(a.out, text);
  if (as_json) {
    json out = {{"vertices", g.order()}, {"edges", g.flat().size()}, {"layers", g.layer_count()},
                {"positions", layout.has_value()}, {"seed", a.seed}};
    if (a.out.empty()) {
      out["host"] = text;
    } else {
      out["file"] = a.out;
    }
    std::cout << out.dump(2) << '\n';
  } else if (a.out.empty()) {
    std::cout << text;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and approximate list-embedding counts for small patterns in multi-layer hosts"};
  app.require_subcommand(1);
  bool as_json = false;
  unsigned threads = 1;
  app.add_flag("--json", as_json, "Machine-readable output");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 1024u));

  CountArgs count_args;
  auto* count = app.add_subcommand("count", "Exact list-embedding count");
  count->add_option("--host", count_args.host, "Host file")->required();
  count->add_option("--pattern", count_args.pattern, "Pattern file")->required();
  count->add_option("--method", count_args.method, "oracle|bounded-degree|vc-layer|geometric|auto");
  count->add_option("--cover-layer", count_args.cover_layer, "Layer split off by vc-layer");
  count->add_option("--inner", count_args.inner, "Strategy used below vc-layer");
  count->add_option("--cover-guard", count_args.cover_guard, "Largest vertex cover vc-layer will search for")
      ->check(CLI::Range(std::size_t{0}, kVertexCoverGuard));

  ApproxArgs approx_args;
  auto* approx = app.add_subcommand("approx", "Colour-coding estimate");
  approx->add_option("--host", approx_args.host, "Host file")->required();
  approx->add_option("--pattern", approx_args.pattern, "Pattern file")->required();
  approx->add_option("--epsilon", approx_args.epsilon, "Relative error")->required();
  approx->add_option("--delta", approx_args.delta, "Failure probability")->required();
  approx->add_option("--seed", approx_args.seed, "Random seed")->required();
  approx->add_option("--method", approx_args.method, "Unrestricted counter: oracle|bounded-degree|auto");

  std::string peel_host;
  std::size_t peel_steps = 0;
  std::string peel_out;
  auto* peel_cmd = app.add_subcommand("peel", "Greedy maximum-degree peeling");
  peel_cmd->add_option("--host", peel_host, "Host file")->required();
  peel_cmd->add_option("--steps", peel_steps, "Vertices to remove")->required();
  peel_cmd->add_option("--csv", peel_out, "Write the trace here instead of stdout");

  std::string dec_host;
  std::size_t dec_degree = 0;
  auto* decompose = app.add_subcommand("decompose", "High-degree set X_G for a degree target");
  decompose->add_option("--host", dec_host, "Host file")->required();
  decompose->add_option("--max-degree", dec_degree, "Residual maximum degree")->required();

  std::string gadget_clique;
  std::string gadget_prefix;
  bool gadget_verify = false;
  auto* gadget = app.add_subcommand("gadget", "Build the hardness gadget from a multicolour clique instance");
  gadget->add_option("--clique", gadget_clique, "Clique instance file")->required();
  gadget->add_option("--out-prefix", gadget_prefix, "Output prefix")->required();
  gadget->add_flag("--verify", gadget_verify, "Run the structural validators");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Random layered host");
  gen->add_option("--n", gen_args.n, "Vertices")->required();
  gen->add_option("--layers", gen_args.layers, "Layers");
  gen->add_option("--model", gen_args.models, "gnp:p | geometric:r | star-forest | matching (once, or once per layer)");
  gen->add_option("--seed", gen_args.seed, "Random seed");
  gen->add_option("--out", gen_args.out, "Write here instead of stdout");

  for (CLI::App* sub : {count, approx, peel_cmd, decompose, gadget, gen}) {
    sub->add_flag("--json", as_json, "Machine-readable output");
    sub->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*count) return cmd_count(count_args, as_json, threads);
    if (*approx) return cmd_approx(approx_args, as_json, threads);
    if (*peel_cmd) return cmd_peel(peel_host, peel_steps, peel_out, as_json);
    if (*decompose) return cmd_decompose(dec_host, dec_degree, as_json);
    if (*gadget) return cmd_gadget(gadget_clique, gadget_prefix, gadget_verify, as_json);
    if (*gen) return cmd_gen(gen_args, as_json);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const StrategyInfeasible& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
