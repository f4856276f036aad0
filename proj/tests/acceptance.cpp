// Runs the acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is 0 only when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ramify/ramify.hpp"
#include "support.hpp"

using namespace ramify;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Minimum wall time over several runs of f.
double min_time(int runs, const std::function<void()>& f) {
  double best = 1e300;
  for (int i = 0; i < runs; ++i) {
    const auto start = Clock::now();
    f();
    best = std::min(best, seconds_since(start));
  }
  return best;
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Yes-instances collected while running criterion 1.
std::vector<Graph> yes_instances;

Outcome differential() {
  Outcome out;
  std::size_t exhaustive = 0, random = 0, mismatches = 0;
  const auto start = Clock::now();
  auto compare = [&](const Graph& g) {
    const RecognitionReport r = recognize(g);
    const bool ref = reference_recognizer(g);
    if (r.yes() != ref) {
      if (mismatches++ == 0) out.fail("mismatch on " + format_graph(g));
    }
    if (r.yes()) yes_instances.push_back(g);
  };
  for (std::size_t n = 1; n <= 6; ++n) {
    naive::for_each_connected_graph(n, [&](const Graph& g) {
      ++exhaustive;
      compare(g);
    });
  }
  detail::Rng rng(20240601);
  for (; random < 10000; ++random) {
    const std::size_t n = 7 + rng.below(3);
    compare(gen_random_bipartite(n, 0.2 + 0.5 * rng.unit(), rng.next()));
  }
  const double t = seconds_since(start);
  if (t > 600) out.fail(fmt("took %.1f s", t));
  if (out.pass) {
    out.detail = fmt("%zu exhaustive + %zu random graphs, %zu mismatches, %zu yes, %.1f s", exhaustive, random,
                     mismatches, yes_instances.size(), t);
  }
  return out;
}

Outcome named_instances() {
  Outcome out;
  std::size_t checked = 0;
  auto expect = [&](const std::string& name, const Graph& g, bool want) {
    ++checked;
    if (recognize(g).yes() != want) out.fail(name + (want ? " should be yes" : " should be no"));
  };
  expect("Q3", gen_hypercube(3), false);
  expect("C4", gen_cycle(4), true);
  for (std::size_t k = 2; k <= 5; ++k) {
    expect(fmt("cogwheel(%zu)", 2 * k + 1), cogwheel(2 * k + 1), false);
    expect(fmt("cogwheel(%zu)", 2 * k), cogwheel(2 * k), true);
  }
  for (std::size_t k = 3; k <= 6; ++k) expect(fmt("C%zu", 2 * k), gen_cycle(2 * k), false);
  detail::Rng rng(77);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 1 + rng.below(50);
    expect(fmt("tree(%zu)", n), gen_random_tree(n, rng.next()), true);
  }
  for (std::size_t a = 1; a <= 30; ++a) {
    for (std::size_t b = 1; b <= 30; ++b) expect(fmt("grid %zux%zu", a, b), gen_grid(a, b), true);
  }
  if (out.pass) out.detail = fmt("%zu named instances", checked);
  return out;
}

Outcome isometry() {
  Outcome out;
  for (const Graph& g : yes_instances) {
    if (!verify_isometry(embed(g), g)) {
      out.fail("not isometric: " + format_graph(g));
      break;
    }
  }
  const Graph net = grid_network(gen_staircase_polygon(320, 3)).network;
  if (net.edge_count() < 100000) out.fail(fmt("staircase network too small (%zu edges)", net.edge_count()));
  const TwoTreeEmbedding e = embed(net);
  // 100 sources times 100 targets: one shortest-path search per source.
  detail::Rng rng(5);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (int i = 0; i < 100; ++i) {
    const auto u = static_cast<Vertex>(rng.below(net.vertex_count()));
    for (int j = 0; j < 100; ++j) pairs.emplace_back(u, static_cast<Vertex>(rng.below(net.vertex_count())));
  }
  if (!verify_isometry(e, net, pairs)) out.fail("staircase network pairs disagree");
  if (out.pass) {
    out.detail = fmt("%zu small instances (all pairs), %zu pairs on a %zu-edge staircase network", yes_instances.size(),
                     pairs.size(), net.edge_count());
  }
  return out;
}

Outcome linear_time() {
  Outcome out;
  const std::size_t steps[3] = {100, 316, 1000};
  double t[3];
  std::size_t m[3];
  for (int i = 0; i < 3; ++i) {
    const Graph g = grid_network(gen_staircase_polygon(steps[i], 11 + i)).network;
    m[i] = g.edge_count();
    bool yes = true;
    t[i] = min_time(i == 2 ? 3 : 7, [&] { yes = recognize(g).yes(); });
    if (!yes) out.fail("staircase network rejected");
  }
  std::string ratios;
  for (int i = 0; i < 2; ++i) {
    // Normalize to an exact tenfold size step.
    const double r = t[i + 1] / t[i] * (10.0 * m[i] / m[i + 1]);
    ratios += fmt(" %.2f", r);
    if (r > 12) out.fail("");
  }
  if (t[2] > 10) out.fail("");
  out.detail = fmt("edges %zu/%zu/%zu, times %.4f/%.4f/%.4f s, decade ratios", m[0], m[1], m[2], t[0], t[1], t[2]) + ratios;
  return out;
}

Outcome oracle_speed() {
  Outcome out;
  constexpr std::size_t kQueries = 1000000;
  auto per_query = [&](std::size_t a, std::size_t b, std::uint64_t seed, double& total) {
    const Graph g = cartesian_product(gen_random_tree(a, seed), gen_random_tree(b, seed + 1));
    const DistanceOracle o(embed(g));
    detail::Rng rng(seed);
    std::vector<std::pair<Vertex, Vertex>> q(kQueries);
    for (auto& [u, v] : q) {
      u = static_cast<Vertex>(rng.below(g.vertex_count()));
      v = static_cast<Vertex>(rng.below(g.vertex_count()));
    }
    Length sink = 0;
    total = min_time(5, [&] {
      for (const auto& [u, v] : q) sink += o.dist(u, v);
    });
    if (sink < 0) out.fail("negative distance");
    return total / kQueries;
  };
  double small_total = 0, big_total = 0;
  const double small = per_query(100, 100, 31, small_total);
  const double big = per_query(317, 316, 41, big_total);
  const double ratio = big / small;
  if (big_total > 5) out.fail(fmt("10^6 queries took %.2f s", big_total));
  if (ratio > 1.5) out.fail(fmt("per-query ratio %.2f (%.1f ns vs %.1f ns)", ratio, big * 1e9, small * 1e9));
  if (out.pass) {
    out.detail = fmt("10^6 queries in %.3f s on 100172 vertices, %.1f ns vs %.1f ns per query, ratio %.2f", big_total,
                     big * 1e9, small * 1e9, ratio);
  }
  return out;
}

Outcome median_correctness() {
  Outcome out;
  std::size_t instances = 0, triples = 0;
  auto check = [&](const Graph& g, Vertex x, Vertex y, Vertex z, const DistanceOracle& o, const DistanceMatrix& d) {
    ++triples;
    const auto m = medians(d, x, y, z);
    if (m.size() != 1 || o.median(x, y, z) != m[0]) out.fail(fmt("triple (%u,%u,%u) on ", x, y, z) + format_graph(g));
  };
  for (std::size_t n = 1; n <= 7 && out.pass; ++n) {
    naive::for_each_connected_graph(
        n,
        [&](const Graph& g) {
          if (!out.pass || !recognize(g).yes()) return;
          ++instances;
          const DistanceOracle o(embed(g));
          const DistanceMatrix d(g);
          for (Vertex x = 0; x < n; ++x) {
            for (Vertex y = 0; y < n; ++y) {
              for (Vertex z = 0; z < n; ++z) check(g, x, y, z, o, d);
            }
          }
        },
        true);
  }
  const Graph grid = gen_grid(20, 20);
  const DistanceOracle o(embed(grid));
  const DistanceMatrix d(grid);
  detail::Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const auto pick = [&] { return static_cast<Vertex>(rng.below(400)); };
    const Vertex x = pick(), y = pick(), z = pick();
    check(grid, x, y, z, o, d);
  }
  if (out.pass) out.detail = fmt("%zu yes-instances up to 7 vertices plus a 20x20 grid, %zu triples", instances, triples);
  return out;
}

Outcome polygon_geodesics() {
  Outcome out;
  const RectPolygon rect = validate_polygon({{0, 0}, {3, 0}, {3, 2}, {0, 2}});
  const RectPolygon u = validate_polygon({{0, 0}, {5, 0}, {5, 3}, {4, 3}, {4, 1}, {1, 1}, {1, 3}, {0, 3}});
  if (geodesic_dist(rect, {0, 0}, {3, 2}) != 5) out.fail("rectangle case");
  if (geodesic_dist(u, {0, 3}, {5, 3}) != 9) out.fail("U-shape case");

  detail::Rng rng(7);
  std::size_t pairs = 0;
  auto sample_pairs = [&](const RectPolygon& p, bool rectangle) {
    const GridArrangement a = grid_network(p);
    const TwoTreeEmbedding e = embed(a.network);
    const CellComplex c = complex_from_network(a.network);
    const DistanceOracle o(e);
    Coord w = 0, h = 0;
    for (const Point& q : p.corners) {
      w = std::max(w, q.x);
      h = std::max(h, q.y);
    }
    auto sample = [&] {
      for (;;) {
        const Point q{rng.between(0, w), rng.between(0, h)};
        if (contains(p, q)) return q;
      }
    };
    for (int i = 0; i < 20; ++i) {
      const Point s = sample(), t = sample();
      ++pairs;
      const Length g = geodesic_dist(p, s, t);
      const Length l1 = std::abs(s.x - t.x) + std::abs(s.y - t.y);
      const Length pd = point_dist(o, e, c, locate(a, c, e, s), locate(a, c, e, t));
      if (g != pd) out.fail(fmt("geodesic %lld vs two-dendron %lld", static_cast<long long>(g), static_cast<long long>(pd)));
      if (g < l1 || (rectangle && g != l1)) out.fail("l1 bound violated");
    }
  };
  for (std::uint64_t seed = 0; seed < 100; ++seed) sample_pairs(gen_staircase_polygon(1 + rng.below(20), seed), false);
  for (std::uint64_t seed = 0; seed < 10; ++seed) sample_pairs(gen_staircase_polygon(1, 100 + seed), true);
  if (out.pass) out.detail = fmt("fixed cases plus %zu sampled pairs", pairs);
  return out;
}

Outcome simplex_laws() {
  Outcome out;
  const auto start = Clock::now();
  std::size_t families = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    naive::for_each_connected_graph(n, [&](const Graph& f) {
      ++families;
      if (!graphs_isomorphic(inc_graph(simplex_graph(f).graph).graph, f)) out.fail("Inc(k(F)) differs for " + format_graph(f));
    });
  }
  const Graph p4 = gen_path(4), t7 = asymmetric_tree7();
  for (const auto& [name, f] : {std::pair<const char*, Graph>{"P4", p4}, {"T7", t7}, {"P4+T7", disjoint_union(p4, t7)}}) {
    const auto af = automorphism_count(f), ak = automorphism_count(simplex_graph(f).graph);
    if (af != ak) out.fail(fmt("%s: |aut F| = %zu, |aut k(F)| = %zu", name, static_cast<std::size_t>(af), static_cast<std::size_t>(ak)));
  }
  if (!graphs_isomorphic(simplex_graph(gen_cycle(3)).graph, gen_hypercube(3))) out.fail("k(C3) is not Q3");
  const double t = seconds_since(start);
  if (t > 120) out.fail(fmt("took %.1f s", t));
  if (out.pass) out.detail = fmt("%zu graphs F, automorphism counts 2/1/2, k(C3) = Q3, %.1f s", families, t);
  return out;
}

Outcome two_connectivity() {
  Outcome out;
  std::size_t checked = 0, biconnected = 0;
  for (const Graph& g : yes_instances) {
    if (g.vertex_count() < 3) continue;
    ++checked;
    const RecognitionReport r = recognize(g);
    const bool bi = is_biconnected(g);
    biconnected += bi ? 1 : 0;
    if (links_all_connected(g, *r.links) != bi) out.fail("link connectivity disagrees on " + format_graph(g));
  }
  if (out.pass) out.detail = fmt("%zu yes-instances, %zu of them 2-connected", checked, biconnected);
  return out;
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"differential correctness", differential}, {"named instances", named_instances},
      {"factorization isometry", isometry},       {"linear-time recognition", linear_time},
      {"oracle query speed", oracle_speed},       {"median correctness", median_correctness},
      {"polygon geodesics", polygon_geodesics},   {"simplex-graph laws", simplex_laws},
      {"2-connectivity law", two_connectivity},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
