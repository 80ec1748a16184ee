#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "commlab/ball.hpp"
#include "commlab/catalog.hpp"
#include "commlab/error.hpp"
#include "commlab/graph.hpp"
#include "oracles.hpp"

using namespace commlab;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::MalformedInput;
}

std::string affine_key(const oracle::Affine& a) { return a.scale.get_str() + "|" + a.shift.get_str(); }

// Elements of BS(1,2) of length <= r, as affine maps.
std::set<std::string> affine_ball(std::size_t r) {
  std::set<std::string> out;
  for (const auto& w : oracle::all_words(2, r)) out.insert(affine_key(oracle::bs12(w)));
  return out;
}

// Left cosets g<x> in BS(1,2) are (scale, shift mod 1). Neighbours of a coset:
// x fixes it, t doubles, t^-1 halves with two choices of lift.
std::size_t bs_coset_tree_size(std::size_t r) {
  using Key = std::pair<mpq_class, mpq_class>;
  auto frac = [](mpq_class q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    q -= f;
    q.canonicalize();
    return q;
  };
  std::set<Key> seen{{1, 0}};
  std::vector<Key> layer{{1, 0}};
  for (std::size_t d = 0; d < r; ++d) {
    std::vector<Key> next;
    for (const auto& [s, u] : layer) {
      const mpq_class half_s = s / 2;
      for (const Key& k : {Key{s * 2, frac(u * 2)}, Key{half_s, frac(u / 2)}, Key{half_s, frac((u + 1) / 2)}})
        if (seen.insert(k).second) next.push_back(k);
    }
    layer = std::move(next);
  }
  return seen.size();
}

}  // namespace

TEST_CASE("Cayley ball of F2 radius 1 is a star") {
  const auto g = cayley_ball(build_group("free:2"), 1);
  CHECK(g.vertices.size() == 5);
  CHECK(g.edges.size() == 4);
  CHECK(g.vertices[0] == "1");
  CHECK(is_tree(g));
  CHECK(g.frontier().size() == 4);
  CHECK(g.valence(0) == 4);
}

TEST_CASE("Cayley balls of BS(1,2) against the affine action") {
  const auto grp = build_group("bs:1,2");
  for (std::size_t r = 1; r <= 6; ++r) {
    const auto g = cayley_ball(grp, r);
    CHECK(g.vertices.size() == affine_ball(r).size());
  }
  const auto g = cayley_ball(grp, 2);
  REQUIRE(g.vertices.size() == 17);

  // edges between elements of the ball, by the oracle
  const auto ball = affine_ball(2);
  std::set<std::pair<std::string, std::string>> oracle_edges;
  for (const auto& w : oracle::all_words(2, 2))
    for (std::uint32_t s = 0; s < 2; ++s) {
      commlab::Word ws = w;
      ws.push_back({s, 1});
      const auto a = affine_key(oracle::bs12(w)), b = affine_key(oracle::bs12(ws));
      if (ball.count(b)) oracle_edges.emplace(a + "/" + std::to_string(s), b);
    }
  CHECK(g.edges.size() == oracle_edges.size());
  for (const auto& e : g.edges) {
    const auto a = oracle::bs12(grp->parse(g.vertices[e.src]));
    const auto b = oracle::bs12(grp->parse(g.vertices[e.dst]));
    commlab::Word s{{e.label, 1}};
    CHECK(oracle::compose(a, oracle::bs12(s)) == b);
  }
}

TEST_CASE("finite groups saturate") {
  const auto g = cayley_ball(build_group("cyclic:6"), 10);
  CHECK(g.vertices.size() == 6);
  CHECK_FALSE(is_tree(g));
  const auto h = coset_graph_ball(subgroup_of(build_group("cyclic:6"), "trivial"), 10, 4);
  CHECK(h.vertices.size() == 6);
  CHECK(h.edges.size() == 6);
}

TEST_CASE("coset graph of <x> in BS(1,2) is the trivalent tree") {
  const auto h = subgroup_of(build_group("bs:1,2"), "cyclic-span:x");
  for (std::size_t r = 1; r <= 6; ++r) {
    const auto g = coset_graph_ball(h, r, 0);
    CHECK_FALSE(g.tainted);
    CHECK(is_tree(g));
    CHECK(g.vertices.size() == bs_coset_tree_size(r));
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      if (g.depth[v] < r) CHECK(g.valence(v) == 3);
  }
  const auto g = coset_graph_ball(h, 4, 0);
  // x loops at the base
  CHECK(std::count_if(g.self_loops.begin(), g.self_loops.end(),
                      [](auto p) { return p.first == 0; }) >= 1);
}

TEST_CASE("coset graph depth counts are monotone in the radius") {
  const auto h = subgroup_of(build_group("bs:1,2"), "cyclic-span:x");
  const auto small = coset_graph_ball(h, 3, 0), big = coset_graph_ball(h, 5, 0);
  for (std::size_t d = 0; d <= 3; ++d) {
    auto at = [d](const LabeledGraph& g) { return std::count(g.depth.begin(), g.depth.end(), d); };
    CHECK(at(small) == at(big));
  }
}

// vertices and edges of a coset graph as coset keys, independent of the
// representative each build happened to pick
std::pair<std::set<std::string>, std::set<std::string>> keyed(const SubgroupPtr& h, const LabeledGraph& g) {
  const auto& grp = h->ambient();
  std::vector<std::string> k;
  for (const auto& v : g.vertices) k.push_back(*h->left_key(grp->parse(v)));
  std::set<std::string> vs(k.begin(), k.end()), es;
  for (const auto& e : g.edges) es.insert(k[e.src] + "/" + std::to_string(e.label) + "/" + k[e.dst]);
  return {vs, es};
}

TEST_CASE("coset graph balls grow by inclusion") {
  for (const auto& [spec, sub] : {std::pair{"bs:1,2", "cyclic-span:x"}, {"ex3", "cyclic-span:x^2"},
                                    {"abelian:2", "abelian-span:x"}}) {
    const auto h = subgroup_of(build_group(spec), sub);
    REQUIRE_FALSE(coset_graph_ball(h, 1, 0).tainted);
    for (std::size_t r = 1; r <= 4; ++r) {
      const auto [v0, e0] = keyed(h, coset_graph_ball(h, r, 0));
      const auto [v1, e1] = keyed(h, coset_graph_ball(h, r + 1, 0));
      CHECK(std::includes(v1.begin(), v1.end(), v0.begin(), v0.end()));
      CHECK(std::includes(e1.begin(), e1.end(), e0.begin(), e0.end()));
    }
  }
}

TEST_CASE("left multiplication by Q permutes the coset graph ball") {
  const auto h = subgroup_of(build_group("bs:1,2"), "cyclic-span:x");
  const auto& grp = h->ambient();
  const auto g = coset_graph_ball(h, 4, 0);
  const auto [vs, es] = keyed(h, g);
  for (const char* q : {"x", "x^-1", "x^3"}) {
    const Word qw = grp->parse(q);
    std::set<std::string> moved_v, moved_e;
    std::vector<std::string> k;
    for (const auto& v : g.vertices) k.push_back(*h->left_key(concat(qw, grp->parse(v))));
    for (const auto& e : g.edges) moved_e.insert(k[e.src] + "/" + std::to_string(e.label) + "/" + k[e.dst]);
    moved_v.insert(k.begin(), k.end());
    CHECK(moved_v == vs);
    CHECK(moved_e == es);
  }
}

TEST_CASE("H = G collapses to one vertex") {
  for (const char* spec : {"free:2", "bs:1,2", "abelian:2"}) {
    const auto grp = build_group(spec);
    const auto g = coset_graph_ball(subgroup_of(grp, "whole"), 4, 2);
    CHECK(g.vertices.size() == 1);
    CHECK(g.edges.empty());
    CHECK(g.self_loops.size() == grp->rank());
  }
}

TEST_CASE("coset graph of the trivial subgroup is the Cayley graph") {
  const auto grp = build_group("bs:1,2");
  const auto c = cayley_ball(grp, 3);
  const auto g = coset_graph_ball(subgroup_of(grp, "trivial"), 3, 2);
  CHECK(g.vertices.size() == c.vertices.size());
  CHECK(std::set(g.vertices.begin(), g.vertices.end()) == std::set(c.vertices.begin(), c.vertices.end()));
}

TEST_CASE("valence at <x> in F2 grows with the sampling budget") {
  const auto h = subgroup_of(build_group("free:2"), "cyclic-span:x");
  std::vector<std::size_t> budgets{1, 2, 3, 4};
  const auto p = valence_profile([&](std::size_t b) { return coset_graph_ball(h, 1, b); }, "1", budgets);
  CHECK(p.tainted);
  CHECK(p.verdict == ValenceVerdict::UnboundedEvidence);
  for (const auto& [b, v] : p.points) CHECK(v == 4 * b + 2);

  const auto q = subgroup_of(build_group("bs:1,2"), "cyclic-span:x");
  const auto lf = valence_profile([&](std::size_t r) { return coset_graph_ball(q, r, 0); }, "1", {2, 3, 4, 5});
  CHECK(lf.verdict == ValenceVerdict::LocallyFiniteEvidence);
  CHECK(code_of([&] { valence_profile([&](std::size_t r) { return coset_graph_ball(q, r, 0); }, "zzz", {2}); }) ==
        Errc::PreconditionViolation);
}

TEST_CASE("quotient of Z^2 by <x> is a line with x loops") {
  const auto grp = build_group("abelian:2");
  const auto g = quotient_graph_ball(subgroup_of(grp, "abelian-span:x"), 4);
  CHECK(g.vertices.size() == 9);
  CHECK(g.edges.size() == 8);
  CHECK(g.self_loops.size() == 7);  // y^4 x lies outside the ball
  for (const auto& [v, s] : g.self_loops) CHECK(g.label_names[s] == "x");
  CHECK(is_tree(g));
}

TEST_CASE("quotient graph is the image of the Cayley ball") {
  const auto grp = build_group("bs:1,2");
  const auto q = subgroup_of(grp, "cyclic-span:x");
  const auto g = quotient_graph_ball(q, 4);
  const Ball ball(*grp, 4);
  auto vertex_of = [&](const Word& w) {
    const auto k = q->right_key(w);
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      if (q->right_key(grp->parse(g.vertices[v])) == k) return v;
    FAIL("coset missing");
    return std::size_t{0};
  };
  std::set<std::pair<std::size_t, std::uint32_t>> loops(g.self_loops.begin(), g.self_loops.end());
  std::set<GraphEdge> edges(g.edges.begin(), g.edges.end());
  for (const auto& e : ball.elements())
    for (std::uint32_t s = 0; s < 2; ++s) {
      const Word ws = grp->multiply(e.nf, Word{{s, 1}});
      if (!ball.find(ws)) continue;
      const auto a = vertex_of(e.nf), b = vertex_of(ws);
      if (a == b) CHECK(loops.count({a, s}));
      else CHECK(edges.count({a, s, b}));
    }
}

TEST_CASE("ends estimates") {
  const auto one = ends_estimate(cayley_ball(build_group("abelian:2"), 8), {1, 2, 3});
  CHECK(one.classification == EndsClass::One);
  const auto two = ends_estimate(cayley_ball(build_group("abelian:1"), 8), {1, 2, 3});
  CHECK(two.classification == EndsClass::Two);
  const auto zero = ends_estimate(cayley_ball(build_group("cyclic:6"), 8), {1, 2, 3});
  CHECK(zero.classification == EndsClass::Zero);

  const auto h = subgroup_of(build_group("bs:1,2"), "cyclic-span:x");
  const auto tree = ends_estimate([&](std::size_t r) { return coset_graph_ball(h, r, 0); }, {1, 2, 3}, 7);
  REQUIRE(tree.counts.size() == 3);
  CHECK(tree.counts[0].second == 3);
  CHECK(tree.counts[1].second == 6);
  CHECK(tree.counts[2].second == 12);
  CHECK(tree.classification == EndsClass::ManyUncountablePattern);

  CHECK(code_of([] { ends_estimate(cayley_ball(build_group("abelian:1"), 4), {2}); }) ==
        Errc::PreconditionViolation);

  auto tainted = cayley_ball(build_group("abelian:1"), 8);
  tainted.tainted = true;
  CHECK(ends_estimate(tainted, {1, 2}).classification == EndsClass::Inconclusive);
}

TEST_CASE("DOT and JSON export") {
  const auto h = subgroup_of(build_group("bs:1,2"), "cyclic-span:x");
  const auto g = coset_graph_ball(h, 3, 0);
  const std::string dot = export_dot(g);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("label=\"t\"") != std::string::npos);

  const auto back = parse_graph_json(export_json(g));
  CHECK(back == g);
  CHECK(back.depth == g.depth);
  CHECK(export_json(back) == export_json(g));

  const auto c = cayley_ball(build_group("cyclic:6"), 4);
  CHECK(parse_graph_json(export_json(c)) == c);
}

TEST_CASE("malformed graph JSON") {
  for (const char* bad : {"", "{", "[]", "{\"kind\":\"Cayley\"}", "{\"kind\":\"Nope\",\"group\":\"free:1\"}"})
    CHECK(code_of([&] { parse_graph_json(bad); }) == Errc::MalformedInput);
}

TEST_CASE("coset graph hits the vertex cap") {
  const auto h = subgroup_of(build_group("free:2"), "cyclic-span:x");
  setenv("COMMLAB_MAX_VERTICES", "50", 1);
  CHECK(code_of([&] { coset_graph_ball(h, 6, 2); }) == Errc::BudgetExceeded);
  unsetenv("COMMLAB_MAX_VERTICES");
}
