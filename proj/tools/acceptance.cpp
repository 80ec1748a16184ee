// One PASS/FAIL line per acceptance criterion. Optional argument: a file
// that receives a copy of the lines.
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "commlab/ball.hpp"
#include "commlab/catalog.hpp"
#include "commlab/error.hpp"
#include "commlab/graph.hpp"
#include "commlab/hausdorff.hpp"
#include "commlab/hom.hpp"
#include "commlab/lattice.hpp"
#include "commlab/lemma18.hpp"
#include "commlab/parallel.hpp"
#include "commlab/showcase.hpp"
#include "commlab/witness.hpp"

using namespace commlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::size_t workers() { return std::max(1u, std::min(4u, std::thread::hardware_concurrency())); }

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? " " : "") << v[i];
  return s.str();
}

// all words up to max_len over generators 0..rank-1
std::vector<Word> words_upto(std::uint32_t rank, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t from = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t to = out.size();
    for (std::size_t i = from; i < to; ++i)
      for (std::uint32_t c = 0; c < 2 * rank; ++c) {
        Word v = out[i];
        v.push_back(Letter::from_code(c));
        out.push_back(std::move(v));
      }
    from = to;
  }
  return out;
}

Outcome c1() {
  const auto q = subgroup_of(build_group("bs:1,2"), "cyclic-span:x");
  const LabeledGraph g = coset_graph_ball(q, 6, 0);
  std::size_t bad = 0;
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    if (g.depth[v] <= 5 && g.valence(v) != 3) ++bad;
  const bool tree = is_tree(g);
  return {tree && bad == 0 && !g.tainted,
          std::to_string(g.vertices.size()) + " vertices, tree=" + (tree ? "yes" : "no") +
              ", vertices within 5 not of valence 3: " + std::to_string(bad)};
}

Outcome c2() {
  const GroupPtr g = build_group("bs:1,2");
  const auto q = subgroup_of(g, "cyclic-span:x");
  const LabeledGraph quot = quotient_graph_ball(q, 12);
  std::vector<std::size_t> lengths;
  bool ok = true;
  for (long k = 1; k <= 3; ++k) {
    const auto v = quot.find(g->format(generator_power(1, k)));
    const std::size_t len = v ? label_cycle_length(quot, *v, 0).value_or(0) : 0;
    lengths.push_back(len);
    ok = ok && len == (std::size_t{1} << k);
  }
  std::size_t loops = 0;
  for (long i = 1; i <= 3; ++i) {
    const auto v = quot.find(g->format(generator_power(1, -i)));
    for (const auto& [u, s] : quot.self_loops)
      if (v && u == *v && s == 0) {
        ++loops;
        break;
      }
  }
  ok = ok && loops == 3;
  return {ok, "x-cycle lengths at levels 1..3: " + join(lengths) + "; x loops at levels -1..-3: " +
                  std::to_string(loops) + "/3"};
}

Outcome c3() {
  const auto bs = subgroup_of(build_group("bs:1,2"), "cyclic-span:x");
  const EndsReport tree = ends_estimate(coset_graph_ball(bs, 8, 0), {1, 2, 3});
  bool ok = tree.classification == EndsClass::ManyUncountablePattern;
  std::vector<std::size_t> counts;
  for (const auto& [r, n] : tree.counts) {
    counts.push_back(n);
    ok = ok && n == 3 * (std::size_t{1} << (r - 1));
  }
  const auto z2 = subgroup_of(build_group("abelian:2"), "abelian-span:x");
  const EndsReport line = ends_estimate(coset_graph_ball(z2, 8, 0), {1, 2, 3});
  const EndsReport finite = ends_estimate(cayley_ball(build_group("cyclic:6"), 8), {1, 2, 3});
  ok = ok && line.classification == EndsClass::Two && finite.classification == EndsClass::Zero;
  return {ok, "BS(1,2)/<x>: " + join(counts) + " " + std::string(to_string(tree.classification)) +
                  "; Z^2/<x>: " + std::string(to_string(line.classification)) +
                  "; Z/6: " + std::string(to_string(finite.classification))};
}

Outcome c4() {
  const GroupPtr g = build_group("bs:1,2");
  const auto q = subgroup_of(g, "cyclic-span:x");
  const Word t = g->parse("t");
  auto w = witness_search(q, t, {8, 3, 8});
  if (!w) return {false, "no witness found"};
  const VerifyReport v = witness_verify(*w, 8);
  const bool sets = w->a_set == std::vector<Word>{t} && w->b_set.size() <= 2;

  const Ball ball(*g, 8);
  const auto lower = intersect_subgroups(conjugate_subgroup(q, g->parse("t^-1")), q);
  const auto upper = intersect_subgroups(conjugate_subgroup(q, t), q);
  const auto even = subgroup_of(g, "cyclic-span:x^2");
  std::size_t bad = 0;
  for (const auto& e : ball.elements()) {
    if (lower->contains_exact(e.nf) != even->contains_exact(e.nf)) ++bad;
    if (upper->contains_exact(e.nf) != q->contains_exact(e.nf)) ++bad;
  }
  std::string b;
  for (const auto& x : w->b_set) b += (b.empty() ? "" : ", ") + g->format(x);
  return {sets && v.passed && bad == 0,
          "A = {" + g->format(w->a_set.front()) + "}, B = {" + b + "}, verified=" +
              (v.passed ? "yes" : "no") + ", intersection mismatches on " + std::to_string(ball.size()) +
              " elements: " + std::to_string(bad)};
}

Outcome c5() {
  const GroupPtr g = build_group("ex3");
  const auto base = subgroup_of(g, "base");
  const auto x4 = subgroup_of(g, "cyclic-span:x^4");
  const auto both = intersect_subgroups(conjugate_subgroup(base, g->parse("t^-1")), base);
  const auto words = words_upto(2, 8);  // letters x, y
  std::size_t bad = 0, members = 0;
  for (const auto& w : words) {
    const bool in_both = both->contains_exact(w);
    members += in_both;
    if (in_both != x4->contains_exact(w)) ++bad;
  }
  ProfileOptions po;
  po.r_max = 6;
  po.cap = 16;
  po.workers = workers();
  const HausdorffProfile p = hausdorff_profile(base, g->parse("t"), po);
  return {bad == 0 && p.verdict == ProfileVerdict::Growing,
          std::to_string(words.size()) + " base words, " + std::to_string(members) +
              " in the intersection, mismatches with <x^4>: " + std::to_string(bad) +
              "; profile " + join(p.lower_bounds) + " " + std::string(to_string(p.verdict))};
}

Outcome c6() {
  bool ladder = true;
  for (std::size_t n = 1; n <= 8; ++n) {
    IntMatrix x0(1, n + 1);
    x0(0, 0) = 1;
    const QuotientInvariants inv = quotient_invariants(ladder_relations(n), x0);
    ladder = ladder && inv.free_rank == 0 && inv.torsion == IntVector(n, BigInt(2));
  }
  const GroupPtr g = build_group("ex2hnn:2");
  ProfileOptions po;
  po.r_max = 6;
  po.cap = 16;
  po.workers = workers();
  const HausdorffProfile px = hausdorff_profile(subgroup_of(g, "cyclic-span:x0"), g->parse("t"), po);
  const HausdorffProfile pb = hausdorff_profile(subgroup_of(g, "base"), g->parse("t"), po);
  return {ladder && px.verdict == ProfileVerdict::Bounded && pb.verdict == ProfileVerdict::Growing,
          std::string("H_n/<x0> = (Z/2)^n for n <= 8: ") + (ladder ? "yes" : "no") + "; <x0> vs t: " +
              join(px.lower_bounds) + " " + std::string(to_string(px.verdict)) + "; H_2 vs t: " +
              join(pb.lower_bounds) + " " + std::string(to_string(pb.verdict))};
}

Outcome c7() {
  const auto start = std::chrono::steady_clock::now();
  Lemma18Options opt;
  opt.b_radius = 4;
  opt.q_radius = 3;
  opt.workers = workers();
  const Lemma18Report r = lemma18_check(subgroup_of(build_group("bs:1,2"), "cyclic-span:x"), opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream s;
  s << "k = " << r.k << ", " << r.checked << " checks, " << r.violations << " violations, "
    << std::fixed << std::setprecision(1) << secs << " s";
  return {r.k == 3 && r.violations == 0 && !r.tainted && secs < 60, s.str()};
}

Outcome c8() {
  const GroupPtr g = build_group("bs:1,2");
  const auto q = subgroup_of(g, "cyclic-span:x");
  Lemma18Options opt;
  const std::size_t k = lemma18_constant(q, opt);
  const Ball ball(*g, 3);
  const std::size_t n = ball.size();
  std::vector<std::size_t> fails(workers(), 0);
  std::vector<std::size_t> worst(workers(), 0);
  parallel_for(n * n, workers(), [&](std::size_t wk, std::size_t i) {
    const DefectResult d = quasi_hom_defect(q, ball[i / n].nf, ball[i % n].nf, k, 3, 40);
    if (!d.pass) ++fails[wk];
    worst[wk] = std::max(worst[wk], d.measured);
  });
  std::size_t failed = 0, max_measured = 0;
  for (std::size_t w = 0; w < fails.size(); ++w) {
    failed += fails[w];
    max_measured = std::max(max_measured, worst[w]);
  }
  const InvariantSetReport inv = invariant_set_check(q, 3, 3);
  return {failed == 0 && inv.violations == 0,
          std::to_string(n * n) + " pairs, defect failures " + std::to_string(failed) + " (max measured " +
              std::to_string(max_measured) + "); invariant set: " + std::to_string(inv.checked) +
              " checks, " + std::to_string(inv.violations) + " violations"};
}

Outcome c9() {
  const GroupPtr g = build_group("free:2");
  const auto h = subgroup_of(g, "cyclic-span:x");
  ProfileOptions po;
  po.r_max = 6;
  const HausdorffProfile p = hausdorff_profile(h, g->parse("y"), po);
  bool ok = p.lower_bounds.size() == 7;
  for (std::size_t r = 0; r < p.lower_bounds.size(); ++r) ok = ok && p.lower_bounds[r] == r + 1;

  const ValenceProfile vp =
      valence_profile([&](std::size_t b) { return coset_graph_ball(h, 1, b); }, "1", {1, 2, 3, 4, 5});
  std::vector<std::size_t> vals;
  for (const auto& [b, v] : vp.points) vals.push_back(v);
  for (std::size_t i = 1; i < vals.size(); ++i) ok = ok && vals[i] > vals[i - 1];

  const PackingCensus pc = packing_census(h, 1, {2, 3, 4, 5});
  std::vector<std::size_t> counts;
  for (const auto& [r, c] : pc.counts) counts.push_back(c);
  ok = ok && pc.trend == CensusTrend::Growing;
  return {ok, "profile " + join(p.lower_bounds) + "; root valence by budget " + join(vals) +
                  "; packing at D = 1: " + join(counts) + " " + std::string(to_string(pc.trend))};
}

Outcome c10() {
  std::vector<std::string> failed;
  std::size_t ran = 0;
  auto check = [&](const std::string& name, Witness w, std::size_t radius) {
    ++ran;
    if (!witness_verify(w, radius).passed) failed.push_back(name);
  };
  auto need = [](std::optional<Witness> w, const std::string& what) {
    if (!w) throw Error(Errc::AuxiliarySearchFailed, "no witness: " + what);
    return *w;
  };

  const GroupPtr bs = build_group("bs:1,2");
  const auto q = subgroup_of(bs, "cyclic-span:x");
  const Witness wt = need(witness_search(q, bs->parse("t"), {}), "t over <x>");
  check("invert", witness_invert(wt), 8);
  check("transport t x^-1", witness_transport(wt, bs->parse("t x^-1")), 6);
  check("findex <x^2> <= <x>",
        witness_finite_index(wt, subgroup_of(bs, "cyclic-span:x^2"), {Word{}, bs->parse("x")},
                             IndexDirection::Sub, 8),
        8);

  const GroupPtr f2 = build_group("free:2");
  const std::string dir = COMMLAB_DATA;
  const auto a = subgroup_of(f2, "coset-table:" + dir + "/f2_even_x.txt");
  const auto b = subgroup_of(f2, "coset-table:" + dir + "/f2_even_y.txt");
  const Word xy = f2->parse("x y");
  check("intersect",
        witness_intersect(need(witness_search(a, xy, {}), "xy over A"), need(witness_search(b, xy, {}), "xy over B"),
                          intersect_subgroups(a, b), 6),
        6);

  const GroupPtr e1 = build_group("ex2hnn:1");
  const HomPtr f = ladder_to_bs(e1, bs);
  const Witness we = need(witness_search(subgroup_of(e1, "cyclic-span:x0"), e1->parse("t"), {}), "t over <x0>");
  check("pushforward", witness_pushforward(f, we, q), 6);
  check("pullback", witness_pullback(f, wt, e1->parse("t"), preimage_subgroup(f, q)), 6);

  std::string d = std::to_string(ran - failed.size()) + "/" + std::to_string(ran) + " operations verify";
  for (const auto& n : failed) d += "; failed: " + n;
  return {failed.empty(), d};
}

Outcome c11() {
  const auto start = std::chrono::steady_clock::now();
  const GroupPtr dyadic = build_group("bs:1,2");
  const GroupPtr britton = make_bs_hnn(1, 2);
  const auto words = words_upto(2, 8);
  // equal keys in one engine iff equal keys in the other: the key map is a bijection
  std::map<std::string, std::string> fwd, back;
  std::size_t bad = 0;
  for (const auto& w : words) {
    const std::string kd = dyadic->key(w), kb = britton->key(w);
    const auto [i, fresh] = fwd.emplace(kd, kb);
    if (!fresh && i->second != kb) ++bad;
    const auto [j, fresh2] = back.emplace(kb, kd);
    if (!fresh2 && j->second != kd) ++bad;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream s;
  s << words.size() << " words, " << fwd.size() << " elements, " << bad << " disagreements, " << std::fixed
    << std::setprecision(1) << secs << " s";
  return {bad == 0 && fwd.size() == back.size() && secs < 60, s.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"coset graph of <x> in BS(1,2) is a trivalent tree", c1},
      {"quotient graph x-cycles 2^k and loops below", c2},
      {"ends: many / two / zero", c3},
      {"witness for t over <x> and intersection identities", c4},
      {"Ex3 base intersection is <x^4>, profile grows", c5},
      {"ladder quotients and Ex2HNN(2) profiles", c6},
      {"coset-distance inequalities over the radius-4 ball", c7},
      {"quasi-homomorphism defect and invariant set", c8},
      {"F2 non-example", c9},
      {"witness algebra soundness", c10},
      {"dyadic and Britton engines agree", c11},
  };
  std::ostringstream all;
  std::size_t passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    passed += o.pass;
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " | " << o.detail;
    std::cout << line.str() << std::endl;
    all << line.str() << "\n";
  }
  std::cout << passed << "/" << criteria.size() << " criteria pass" << std::endl;
  all << passed << "/" << criteria.size() << " criteria pass\n";
  if (argc > 1) std::ofstream(argv[1]) << all.str();
  return 0;
}
