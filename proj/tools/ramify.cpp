// ramify: recognize, factor and query partial double trees from the shell.
//
// Exit status: 0 success / yes, 1 no-instance or point outside the polygon,
// 2 input or usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ramify/ramify.hpp"

namespace {

using namespace ramify;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kInputError = 2;
constexpr std::size_t kReferenceLimit = 200;

// Usage or input problem; reported on stderr with exit status 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ParsedGraph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write " + path);
}

std::uint64_t parse_u64(const std::string& s) {
  const auto v = detail::parse_int<std::uint64_t>(s);
  if (!v) throw InputError("not a nonnegative integer: " + s);
  return *v;
}

Coord parse_coord(const std::string& s) {
  const auto v = detail::parse_int<Coord>(s);
  if (!v) throw InputError("not an integer: " + s);
  return *v;
}

Vertex vertex_arg(const ParsedGraph& pg, const std::string& s) {
  const auto v = pg.vertex_of(parse_u64(s));
  if (!v) throw InputError("unknown vertex " + s);
  return *v;
}

std::string no_line(const ParsedGraph& pg, const Witness& w) {
  const auto name = [&](Vertex v) { return std::to_string(pg.original_ids[v]); };
  std::string line = "NO " + std::string(witness_kind(w));
  const std::string data = witness_data(pg.graph, w, name);
  if (!data.empty()) line += " " + data;
  return line;
}

json witness_json(const ParsedGraph& pg, const Witness& w) {
  auto id = [&](Vertex v) -> json {
    if (v == kNoVertex) return nullptr;
    return pg.original_ids[v];
  };
  json j;
  j["kind"] = std::string(witness_kind(w));
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, NotConnected>) {
          j["reached"] = id(x.reached);
          j["unreached"] = id(x.unreached);
        } else if constexpr (std::is_same_v<T, NotBipartite>) {
          json c = json::array();
          for (const Vertex v : x.odd_cycle) c.push_back(id(v));
          j["odd_cycle"] = c;
        } else if constexpr (std::is_same_v<T, LabelTooLarge>) {
          j["vertex"] = id(x.vertex);
        } else if constexpr (std::is_same_v<T, BadLabelIntersection>) {
          j["vertex"] = id(x.vertex);
          j["y"] = id(x.y);
          j["z"] = id(x.z);
          j["common"] = x.common;
        } else if constexpr (std::is_same_v<T, ConsecutiveEqualLabels>) {
          j["first"] = id(x.first);
          j["second"] = id(x.second);
        } else {
          j["vertex"] = id(x.vertex);
          json c = json::array();
          for (const EdgeId e : x.cycle) {
            const Edge& ed = pg.graph.edge(e);
            c.push_back(json::array({id(ed.u), id(ed.v)}));
          }
          j["cycle"] = c;
        }
      },
      w);
  return j;
}

int cmd_recognize(const std::string& file, bool as_json, bool bfs) {
  const ParsedGraph pg = load_graph(file);
  const RecognitionReport r = recognize(pg.graph, bfs ? OrderMode::kBFS : OrderMode::kLexBFS);
  if (as_json) {
    json j;
    j["verdict"] = r.yes() ? "yes" : "no";
    j["vertices"] = pg.graph.vertex_count();
    j["edges"] = pg.graph.edge_count();
    j["order"] = bfs ? "bfs" : "lexbfs";
    if (r.yes()) {
      j["squares"] = r.squares.size();
      j["links_connected"] = links_all_connected(pg.graph, *r.links);
    } else {
      j["witness"] = witness_json(pg, *r.witness);
    }
    std::cout << j.dump() << "\n";
  } else {
    std::cout << (r.yes() ? std::string("YES") : no_line(pg, *r.witness)) << "\n";
  }
  return r.yes() ? kOk : kNo;
}

// Embeds or prints the NO line; returns nullopt on a no-instance.
std::optional<TwoTreeEmbedding> embed_or_report(const ParsedGraph& pg) {
  const RecognitionReport r = recognize(pg.graph);
  if (!r.yes()) {
    std::cout << no_line(pg, *r.witness) << "\n";
    return std::nullopt;
  }
  return embed(pg.graph, r);
}

int cmd_factor(const std::string& file, const std::string& prefix) {
  const ParsedGraph pg = load_graph(file);
  const auto e = embed_or_report(pg);
  if (!e) return kNo;
  write_file(prefix + ".t1", format_graph(e->trees[0], "tree"));
  write_file(prefix + ".t2", format_graph(e->trees[1], "tree"));
  std::string coords;
  for (Vertex v = 0; v < pg.graph.vertex_count(); ++v) {
    coords += std::to_string(pg.original_ids[v]) + " " + std::to_string(e->coords[0][v]) + " " +
              std::to_string(e->coords[1][v]) + "\n";
  }
  write_file(prefix + ".coords", coords);
  return kOk;
}

int cmd_dist(const std::string& file, const std::vector<std::string>& ids, const std::string& pairs_file) {
  const ParsedGraph pg = load_graph(file);
  std::vector<std::pair<Vertex, Vertex>> queries;
  if (ids.size() % 2 != 0) throw InputError("dist expects vertex ids in pairs");
  for (std::size_t i = 0; i < ids.size(); i += 2) queries.emplace_back(vertex_arg(pg, ids[i]), vertex_arg(pg, ids[i + 1]));
  if (!pairs_file.empty()) {
    std::istringstream in(read_file(pairs_file));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      const auto tok = detail::split_tokens(line);
      if (tok.empty()) continue;
      if (tok.size() != 2) throw InputError(pairs_file + ": line " + std::to_string(line_no) + ": expected `u v`");
      queries.emplace_back(vertex_arg(pg, std::string(tok[0])), vertex_arg(pg, std::string(tok[1])));
    }
  }
  const auto e = embed_or_report(pg);
  if (!e) return kNo;
  const DistanceOracle o(*e);
  std::string out;
  for (const auto& [u, v] : queries) out += std::to_string(o.dist(u, v)) + "\n";
  std::cout << out;
  return kOk;
}

int cmd_median(const std::string& file, const std::string& x, const std::string& y, const std::string& z) {
  const ParsedGraph pg = load_graph(file);
  const Vertex a = vertex_arg(pg, x), b = vertex_arg(pg, y), c = vertex_arg(pg, z);
  const auto e = embed_or_report(pg);
  if (!e) return kNo;
  std::cout << pg.original_ids[DistanceOracle(*e).median(a, b, c)] << "\n";
  return kOk;
}

int cmd_polygon(const std::string& file, const std::string& mode, const std::vector<std::string>& args,
                std::int64_t scale) {
  if (scale <= 0) throw InputError("--scale must be positive");
  const RectPolygon p = scaled(parse_polygon(read_file(file)), scale);
  if (mode == "dist") {
    if (args.size() != 4) throw InputError("polygon dist expects sx sy tx ty");
    const Point s{parse_coord(args[0]) * scale, parse_coord(args[1]) * scale};
    const Point t{parse_coord(args[2]) * scale, parse_coord(args[3]) * scale};
    for (const Point q : {s, t}) {
      if (!contains(p, q)) {
        std::cerr << "ramify: " << PointOutsideError(q).what() << "\n";
        return kNo;
      }
    }
    std::cout << geodesic_dist(p, s, t) << "\n";
    return kOk;
  }
  if (mode == "network") {
    if (args.size() != 1) throw InputError("polygon network expects an output prefix");
    const GridArrangement a = grid_network(p);
    write_file(args[0] + ".graph", format_graph(a.network, "weighted"));
    std::string geom;
    for (Vertex v = 0; v < a.geometry.size(); ++v) {
      geom += std::to_string(v) + " " + std::to_string(a.geometry[v].x) + " " + std::to_string(a.geometry[v].y) + "\n";
    }
    write_file(args[0] + ".geom", geom);
    return kOk;
  }
  throw InputError("unknown polygon mode " + mode + " (expected dist or network)");
}

int cmd_gen(const std::string& kind, const std::vector<std::string>& params, std::optional<std::uint64_t> seed,
            Coord min_step, Coord max_step) {
  auto want = [&](std::size_t count) {
    if (params.size() != count) {
      throw InputError("gen " + kind + " expects " + std::to_string(count) + " parameter(s)");
    }
  };
  auto need_seed = [&]() -> std::uint64_t {
    if (!seed) throw InputError("gen " + kind + " is randomized and requires --seed");
    return *seed;
  };
  auto size = [&](std::size_t i) {
    const auto v = parse_u64(params[i]);
    if (v == 0) throw InputError("sizes must be positive");
    if (v > 10'000'000) throw InputError("size too large: " + params[i]);
    return static_cast<std::size_t>(v);
  };
  std::string out;
  try {
    if (kind == "path") {
      want(1);
      out = format_graph(gen_path(size(0)));
    } else if (kind == "cycle") {
      want(1);
      out = format_graph(gen_cycle(size(0)));
    } else if (kind == "grid") {
      want(2);
      out = format_graph(gen_grid(size(0), size(1)));
    } else if (kind == "hypercube") {
      want(1);
      out = format_graph(gen_hypercube(size(0)));
    } else if (kind == "tree") {
      want(1);
      out = format_graph(gen_random_tree(size(0), need_seed()));
    } else if (kind == "cogwheel") {
      want(1);
      out = format_graph(cogwheel(size(0)));
    } else if (kind == "simplex" || kind == "iterated-simplex") {
      want(1);
      const Graph f = load_graph(params[0]).graph;
      if (f.vertex_count() > 64) throw InputError("simplex graphs are limited to 64-vertex inputs");
      out = format_graph(kind == "simplex" ? simplex_graph(f).graph : iterated_simplex(f));
    } else if (kind == "staircase") {
      want(1);
      out = format_polygon(gen_staircase_polygon(size(0), need_seed(), min_step, max_step));
    } else if (kind == "polyomino") {
      want(1);
      out = format_polygon(gen_random_polygon(size(0), need_seed(), max_step));
    } else if (kind == "asym-tree7") {
      want(0);
      out = format_graph(asymmetric_tree7());
    } else {
      throw InputError("unknown kind " + kind);
    }
  } catch (const std::invalid_argument& err) {
    throw InputError(err.what());
  }
  std::cout << out;
  return kOk;
}

int cmd_check(const std::string& file) {
  const ParsedGraph pg = load_graph(file);
  const Graph& g = pg.graph;
  if (g.vertex_count() > kReferenceLimit) {
    std::cerr << "ramify: " << TooLargeError(g.vertex_count(), kReferenceLimit).what() << "\n";
    return kInputError;
  }
  const RecognitionReport r = recognize(g);
  const bool fast = r.yes();
  const bool slow = reference_recognizer(g);
  const auto word = [](bool b) { return b ? "yes" : "no"; };
  if (fast == slow) {
    std::cout << "AGREE " << word(fast);
    if (!fast) std::cout << " " << no_line(pg, *r.witness).substr(3);
    std::cout << "\n";
    return kOk;
  }
  std::cout << "DISAGREE fast=" << word(fast) << " reference=" << word(slow);
  if (!fast) std::cout << " " << no_line(pg, *r.witness).substr(3);
  std::cout << "\n";
  return kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recognize, factor and query partial double trees"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string file, prefix, pairs_file, mode, kind;
  std::vector<std::string> rest;
  bool as_json = false, bfs = false;
  std::int64_t scale = 1;
  std::optional<std::uint64_t> seed;
  Coord min_step = 1, max_step = 10;
  std::string x, y, z;

  auto* rec = app.add_subcommand("recognize", "decide whether a graph is a partial double tree");
  rec->add_option("file", file, "graph file")->required();
  rec->add_flag("--json", as_json, "machine-readable report");
  rec->add_flag("--bfs", bfs, "plain BFS order with the global equal-label check");

  auto* fac = app.add_subcommand("factor", "write the two tree factors and the coordinates");
  fac->add_option("file", file, "graph file")->required();
  fac->add_option("prefix", prefix, "output prefix (.t1 .t2 .coords)")->required();

  auto* dst = app.add_subcommand("dist", "distances between vertex pairs");
  dst->add_option("file", file, "graph file")->required();
  dst->add_option("ids", rest, "u v [u v ...]");
  dst->add_option("--pairs", pairs_file, "file with one `u v` pair per line");

  auto* med = app.add_subcommand("median", "median of three vertices");
  med->add_option("file", file, "graph file")->required();
  med->add_option("x", x)->required();
  med->add_option("y", y)->required();
  med->add_option("z", z)->required();

  auto* pol = app.add_subcommand("polygon", "geodesics and grid networks of rectilinear polygons");
  pol->add_option("file", file, "polygon file")->required();
  pol->add_option("mode", mode, "dist | network")->required();
  pol->add_option("args", rest, "dist: sx sy tx ty; network: output prefix (.graph .geom)");
  pol->add_option("--scale", scale, "multiply every coordinate by this factor");

  auto* gen = app.add_subcommand("gen", "print a generated graph or polygon");
  gen->add_option("kind", kind,
                  "path n | cycle n | grid m n | hypercube d | tree n | cogwheel n | simplex FILE | "
                  "iterated-simplex FILE | staircase steps | polyomino cells | asym-tree7")
      ->required();
  gen->add_option("params", rest, "parameters of the kind");
  gen->add_option("--seed", seed, "seed for randomized kinds");
  gen->add_option("--min-step", min_step, "staircase: smallest step");
  gen->add_option("--max-step", max_step, "staircase: largest step; polyomino: largest cell width");

  auto* chk = app.add_subcommand("check", "compare the fast recognizer with the reference one");
  chk->add_option("file", file, "graph file (at most 200 vertices)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*rec) return cmd_recognize(file, as_json, bfs);
    if (*fac) return cmd_factor(file, prefix);
    if (*dst) return cmd_dist(file, rest, pairs_file);
    if (*med) return cmd_median(file, x, y, z);
    if (*pol) return cmd_polygon(file, mode, rest, scale);
    if (*gen) return cmd_gen(kind, rest, seed, min_step, max_step);
    if (*chk) return cmd_check(file);
  } catch (const InputError& e) {
    std::cerr << "ramify: " << e.what() << "\n";
    return kInputError;
  } catch (const ramify::Error& e) {
    std::cerr << "ramify: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
