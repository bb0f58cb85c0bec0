#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "theta/certificate.hpp"
#include "theta/degree_packing.hpp"
#include "theta/errors.hpp"
#include "theta/generators.hpp"
#include "theta/graph.hpp"
#include "theta/hitting_sets.hpp"
#include "theta/oracles.hpp"

using nlohmann::json;
using namespace theta;

namespace {

struct Options {
  int r = 2;
  int k = 1;
  int n = 6;
  int m = 3;
  int budget_vertices = -1;
  int budget_edges = -1;
  std::uint64_t seed = 1;
  std::string out;
  double bound_a = 1.0;
  double bound_alpha = 1.0;
  double bound_c = 0.9;
  int bound_k0 = 1;
  std::string variant = "quadratic-in-k";
  std::string disjointness = "edge";
  bool recursive_cover = false;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

// Machine-readable result on stdout (and into --out when given); callers
// parse stdout, humans read stderr.
void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_output_file(out_path, text);
}

Budget resolve_budget(const Options& o) {
  Budget b = budget_from_env();
  if (o.budget_vertices > 0) b.max_vertices = o.budget_vertices;
  if (o.budget_edges > 0) b.max_edges = o.budget_edges;
  return b;
}

BoundParams resolve_bounds(const Options& o) {
  BoundParams p;
  p.A = o.bound_a;
  p.alpha = o.bound_alpha;
  p.c = o.bound_c;
  p.k0 = o.bound_k0;
  p.variant = o.variant;
  return p;
}

// Exact packing number, component by component (models never straddle a
// biconnected component, so the counts add).
int packing_number_by_components(const MultiGraph& g, int r, const Budget& b) {
  int total = 0;
  for (const MultiGraph& comp : biconnected_components(g)) {
    total += static_cast<int>(edge_packing_exact(comp, r, b).certificates.size());
  }
  return total;
}

CheckResult check_cover_file(const MultiGraph& g, const EdgeSet& y, int r, const Budget& b) {
  for (EdgeId e : y) {
    if (!g.has_edge(e)) {
      return CheckResult::fail("cover lists unknown edge " + std::to_string(e));
    }
  }
  MultiGraph rest = g.remove_edges(y);
  for (const MultiGraph& comp : biconnected_components(rest)) {
    if (has_theta_model(comp, r, b)) {
      return CheckResult::fail("a model survives removal of the cover");
    }
  }
  return CheckResult::pass();
}

int cmd_pack(const std::string& input, const Options& o) {
  MultiGraph g = parse_graph(read_input(input));
  Budget b = resolve_budget(o);
  auto res = pack_componentwise(g, o.k, o.r, b);
  json j;
  j["command"] = "pack";
  j["r"] = o.r;
  j["k"] = o.k;
  j["found"] = res.has_value();
  if (res) j["packing"] = packing_to_json(*res);
  emit(j, o.out);
  if (res) {
    std::cerr << "pack: " << o.k << " edge-disjoint certificates found\n";
  } else {
    std::cerr << "pack: no family of " << o.k << " certificates found\n";
  }
  return 0;
}

int cmd_cover(const std::string& input, const Options& o) {
  MultiGraph g = parse_graph(read_input(input));
  Budget b = resolve_budget(o);
  int nu = packing_number_by_components(g, o.r, b);
  int k_used = std::max(o.k, nu + 1);
  PipelineResult res = edge_ep_pipeline(g, k_used, o.r, b, 14, o.recursive_cover);
  if (res.packed) {
    throw CertificateError("cover: pipeline packed past the exact packing number");
  }
  json j;
  j["command"] = "cover";
  j["r"] = o.r;
  j["k"] = o.k;
  j["k_used"] = k_used;
  j["cover"] = res.cover;
  j["size"] = res.cover.size();
  j["cover_path"] = res.cover_path;
  emit(j, o.out);
  std::cerr << "cover: " << res.cover.size() << " edges (" << res.cover_path << " path)\n";
  return 0;
}

int cmd_pipeline(const std::string& input, const Options& o) {
  MultiGraph g = parse_graph(read_input(input));
  Budget b = resolve_budget(o);
  PipelineResult res = edge_ep_pipeline(g, o.k, o.r, b, 14, o.recursive_cover);
  json j;
  j["command"] = "pipeline";
  j["r"] = o.r;
  j["k"] = o.k;
  j["packed"] = res.packed;
  if (res.packed) {
    j["packing"] = packing_to_json(res.packing);
    std::cerr << "pipeline: packing branch, " << res.packing.certificates.size()
              << " certificates\n";
  } else {
    j["cover"] = res.cover;
    j["cover_path"] = res.cover_path;
    std::cerr << "pipeline: cover branch, " << res.cover.size() << " edges ("
              << res.cover_path << " path)\n";
  }
  emit(j, o.out);
  return 0;
}

int cmd_oracle(const std::string& input, const Options& o) {
  MultiGraph g = parse_graph(read_input(input));
  Budget b = resolve_budget(o);
  PackingWitness pe = edge_packing_exact(g, o.r, b);
  PackingWitness pv = vertex_packing_exact(g, o.r, b);
  EdgeSet ce = edge_cover_exact(g, o.r, b);
  VertexSet cv = vertex_cover_exact(g, o.r, b);
  json j;
  j["command"] = "oracle";
  j["r"] = o.r;
  j["nu_e"] = pe.certificates.size();
  j["nu_v"] = pv.certificates.size();
  j["tau_e"] = ce.size();
  j["tau_v"] = cv.size();
  j["edge_cover"] = ce;
  j["vertex_cover"] = cv;
  emit(j, o.out);
  std::cerr << "oracle: nu_e=" << pe.certificates.size() << " tau_e=" << ce.size()
            << " nu_v=" << pv.certificates.size() << " tau_v=" << cv.size() << "\n";
  return 0;
}

int cmd_gap(const std::string& input, const Options& o) {
  MultiGraph g = parse_graph(read_input(input));
  Budget b = resolve_budget(o);
  BoundParams p = resolve_bounds(o);
  GapReport rep = gap_report(g, o.r, p, b, 14, o.recursive_cover);

  // The same deterministic runs the report was built from, kept as witnesses.
  PackingWitness pw = edge_packing_exact(g, o.r, b);
  PipelineResult forced = edge_ep_pipeline(g, rep.k_packed + 1, o.r, b, 14, o.recursive_cover);

  json j;
  j["command"] = "gap";
  j["r"] = o.r;
  j["k_packed"] = rep.k_packed;
  j["cover_size"] = rep.cover_size;
  j["tau_exact"] = rep.tau_exact;
  j["bound_claimed"] = rep.bound_claimed;
  j["violated"] = rep.violated;
  j["cover_path"] = rep.cover_path;
  j["bound_params"] = {{"A", p.A},
                       {"alpha", p.alpha},
                       {"c", p.c},
                       {"k0", p.k0},
                       {"variant", p.variant}};
  j["packing"] = packing_to_json(pw);
  j["cover"] = forced.cover;
  if (!o.out.empty()) {
    std::string packing_file = o.out + ".packing.json";
    std::string cover_file = o.out + ".cover.json";
    write_output_file(packing_file, packing_to_json(pw).dump(2) + "\n");
    json cov;
    cov["r"] = o.r;
    cov["cover"] = forced.cover;
    write_output_file(cover_file, cov.dump(2) + "\n");
    j["packing_file"] = packing_file;
    j["cover_file"] = cover_file;
  } else {
    j["packing_file"] = nullptr;
    j["cover_file"] = nullptr;
  }
  emit(j, o.out);
  std::cerr << "gap: nu'=" << rep.k_packed << " cover=" << rep.cover_size
            << " claimed<=" << rep.bound_claimed << (rep.violated ? " VIOLATED" : "") << "\n";
  return 0;
}

int cmd_verify(const std::string& artifact, const std::string& graph_path, const Options& o) {
  MultiGraph g = parse_graph(read_input(graph_path));
  Budget b = resolve_budget(o);
  json j = json::parse(read_input(artifact));
  Disjointness d = o.disjointness == "vertex" ? Disjointness::vertex : Disjointness::edge;

  CheckResult res;
  std::string kind;
  if (j.is_array()) {
    kind = "packing";
    res = verify_packing(g, packing_from_json(j, d));
  } else if (j.is_object() && j.contains("part1")) {
    kind = "certificate";
    res = verify_model(g, certificate_from_json(j));
  } else if (j.is_object() && j.contains("packed")) {
    if (j.at("packed").get<bool>()) {
      kind = "packing";
      res = verify_packing(g, packing_from_json(j.at("packing"), d));
    } else {
      kind = "cover";
      EdgeSet y = j.at("cover").get<EdgeSet>();
      set_normalize(y);
      res = check_cover_file(g, y, j.at("r").get<int>(), b);
    }
  } else if (j.is_object() && j.contains("packing")) {
    if (j.contains("found") && !j.at("found").get<bool>()) {
      throw ParseError("artifact holds no witness to verify");
    }
    kind = "packing";
    res = verify_packing(g, packing_from_json(j.at("packing"), d));
  } else if (j.is_object() && j.contains("cover")) {
    kind = "cover";
    EdgeSet y = j.at("cover").get<EdgeSet>();
    set_normalize(y);
    res = check_cover_file(g, y, j.at("r").get<int>(), b);
  } else {
    throw ParseError("unrecognized artifact shape");
  }

  json out;
  out["command"] = "verify";
  out["kind"] = kind;
  out["valid"] = res.ok;
  out["reason"] = res.ok ? "" : res.reason;
  emit(out, o.out);
  std::cerr << "verify: " << kind << (res.ok ? " valid" : " INVALID: " + res.reason) << "\n";
  return res.ok ? 0 : 4;
}

int cmd_generate(const std::string& family, const Options& o) {
  MultiGraph g;
  if (family == "theta") {
    g = make_theta(o.r);
  } else if (family == "cycle") {
    g = make_cycle(o.n);
  } else if (family == "clique") {
    g = make_clique(o.n);
  } else if (family == "wheel") {
    g = make_wheel(o.n);
  } else if (family == "wall") {
    g = make_wall(o.n, o.m);
  } else if (family == "random-biconnected") {
    g = random_biconnected(o.n, o.m, o.seed);
  } else {
    throw std::invalid_argument("unknown family " + family);
  }
  std::string text = serialize_graph(g);
  std::cout << text;
  if (!o.out.empty()) write_output_file(o.out, text);
  std::cerr << "generate: " << family << ", " << g.vertex_count() << " vertices, "
            << g.edge_count() << " edges\n";
  return 0;
}

void add_budget_flags(CLI::App* sub, Options& o) {
  sub->add_option("--budget-vertices", o.budget_vertices,
                  "vertex cap for exact searches (overrides THETA_EPSA_BUDGET)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--budget-edges", o.budget_edges,
                  "edge cap for exact searches (overrides THETA_EPSA_BUDGET)")
      ->check(CLI::PositiveNumber);
}

void add_out_flag(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "also write the output to this file");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  std::string input;
  std::string artifact;
  std::string family;

  CLI::App app{"certified packing and covering of theta_r minor models in multigraphs"};
  app.require_subcommand(1);

  CLI::App* pack = app.add_subcommand("pack", "find k edge-disjoint model certificates");
  pack->add_option("input", input, "graph file, '-' for stdin")->required();
  pack->add_option("--r", o.r, "number of parallel edges in theta_r (>= 2)");
  pack->add_option("--k", o.k, "certificates wanted");
  add_budget_flags(pack, o);
  add_out_flag(pack, o);

  CLI::App* cover = app.add_subcommand("cover", "build an edge hitting set");
  cover->add_option("input", input, "graph file, '-' for stdin")->required();
  cover->add_option("--r", o.r, "number of parallel edges in theta_r (>= 2)");
  cover->add_option("--k", o.k,
                    "demand used in the degree gate; raised past the exact packing "
                    "number automatically");
  cover->add_flag("--recursive", o.recursive_cover,
                  "use the recursive separator construction instead of the exact cover");
  add_budget_flags(cover, o);
  add_out_flag(cover, o);

  CLI::App* pipeline = app.add_subcommand("pipeline", "packing or cover, whichever holds");
  pipeline->add_option("input", input, "graph file, '-' for stdin")->required();
  pipeline->add_option("--r", o.r, "number of parallel edges in theta_r (>= 2)");
  pipeline->add_option("--k", o.k, "packing demand");
  pipeline->add_flag("--recursive", o.recursive_cover,
                     "use the recursive separator construction on the cover branch");
  add_budget_flags(pipeline, o);
  add_out_flag(pipeline, o);

  CLI::App* verify = app.add_subcommand("verify", "re-check a certificate or cover file");
  verify->add_option("artifact", artifact, "certificate/packing/cover JSON file")->required();
  verify->add_option("input", input, "graph file, '-' for stdin")->required();
  verify->add_option("--disjointness", o.disjointness, "packing disjointness to enforce")
      ->check(CLI::IsMember({"edge", "vertex"}));
  add_budget_flags(verify, o);
  add_out_flag(verify, o);

  CLI::App* oracle = app.add_subcommand("oracle", "exact packing and cover numbers");
  oracle->add_option("input", input, "graph file, '-' for stdin")->required();
  oracle->add_option("--r", o.r, "number of parallel edges in theta_r (>= 2)");
  add_budget_flags(oracle, o);
  add_out_flag(oracle, o);

  CLI::App* gap = app.add_subcommand("gap", "measured values next to the configured bound");
  gap->add_option("input", input, "graph file, '-' for stdin")->required();
  gap->add_option("--r", o.r, "number of parallel edges in theta_r (>= 2)");
  gap->add_option("--bound-A", o.bound_a, "leading constant of the bound formula");
  gap->add_option("--bound-alpha", o.bound_alpha, "polylog exponent of the bound formula");
  gap->add_option("--bound-c", o.bound_c, "geometric decay constant, in (0,1)");
  gap->add_option("--bound-k0", o.bound_k0, "evaluation floor for k");
  gap->add_option("--variant", o.variant, "bound variant")
      ->check(CLI::IsMember({"quadratic-in-k", "quartic-in-k"}));
  gap->add_flag("--recursive", o.recursive_cover,
                "use the recursive separator construction on the cover branch");
  add_budget_flags(gap, o);
  add_out_flag(gap, o);

  CLI::App* generate = app.add_subcommand("generate", "emit a graph from a named family");
  generate->add_option("family", family, "theta|cycle|clique|wheel|wall|random-biconnected")
      ->required()
      ->check(CLI::IsMember({"theta", "cycle", "clique", "wheel", "wall",
                             "random-biconnected"}));
  generate->add_option("--r", o.r, "parallel edges (theta family)");
  generate->add_option("--n", o.n, "size: cycle/clique/wheel vertices, wall width");
  generate->add_option("--m", o.m, "second size: wall height, random chord count");
  generate->add_option("--seed", o.seed, "PRNG seed (random-biconnected)");
  add_out_flag(generate, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(pack)) return cmd_pack(input, o);
    if (app.got_subcommand(cover)) return cmd_cover(input, o);
    if (app.got_subcommand(pipeline)) return cmd_pipeline(input, o);
    if (app.got_subcommand(verify)) return cmd_verify(artifact, input, o);
    if (app.got_subcommand(oracle)) return cmd_oracle(input, o);
    if (app.got_subcommand(gap)) return cmd_gap(input, o);
    if (app.got_subcommand(generate)) return cmd_generate(family, o);
    std::cerr << "no command\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 3;
  } catch (const CertificateError& e) {
    std::cerr << "certificate: " << e.what() << "\n";
    return 4;
  } catch (const ParseError& e) {
    std::cerr << "input: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
