#include "commlab/showcase.hpp"

#include <map>

#include "commlab/ball.hpp"
#include "commlab/catalog.hpp"
#include "commlab/error.hpp"
#include "commlab/hausdorff.hpp"
#include "commlab/lattice.hpp"
#include "commlab/witness.hpp"

namespace commlab {

namespace {

struct Checks {
  Json list = Json::array();
  bool pass = true;
  bool conclusive = true;

  void add(std::string name, bool ok, Json detail = Json()) {
    Json c;
    c["name"] = std::move(name);
    c["pass"] = ok;
    if (!detail.is_null()) c["detail"] = std::move(detail);
    list.push_back(std::move(c));
    pass = pass && ok;
  }
};

HausdorffProfile profile(const SubgroupPtr& h, const Word& g, const ShowcaseOptions& opt,
                         Checks& checks) {
  ProfileOptions po;
  po.r_max = 6;
  po.cap = 16;
  po.workers = opt.workers;
  HausdorffProfile p = hausdorff_profile(h, g, po);
  if (p.verdict == ProfileVerdict::Inconclusive) checks.conclusive = false;
  return p;
}

// Elements of the ball where membership in `lhs` and `rhs` disagree.
Json mismatches(const Ball& ball, const Subgroup& lhs, const Subgroup& rhs, const Group& g) {
  Json out = Json::array();
  for (const auto& e : ball.elements())
    if (lhs.contains_exact(e.nf) != rhs.contains_exact(e.nf)) out.push_back(g.format(e.nf));
  return out;
}

ExampleResult example1(const ShowcaseOptions& opt) {
  const GroupPtr g = build_group("bs:1,2");
  const SubgroupPtr q = subgroup_of(g, "cyclic-span:x");
  const Word t = g->parse("t");
  Checks checks;
  Json reports;

  auto w = witness_search(q, t, {8, 3, 4});
  checks.add("witness found", w.has_value());
  if (w) {
    checks.add("A = {t}", w->a_set == std::vector<Word>{t});
    checks.add("|B| <= 2", w->b_set.size() <= 2);
    const VerifyReport v = witness_verify(*w, 8);
    checks.add("witness verifies at radius 8", v.passed, to_json(*g, v));
    reports["witness"] = to_json(*w, 4);
  }

  const Ball ball(*g, 8);
  const SubgroupPtr lower = intersect_subgroups(conjugate_subgroup(q, g->parse("t^-1")), q);
  const SubgroupPtr upper = intersect_subgroups(conjugate_subgroup(q, t), q);
  const Json m1 = mismatches(ball, *lower, *subgroup_of(g, "cyclic-span:x^2"), *g);
  const Json m2 = mismatches(ball, *upper, *q, *g);
  checks.add("t^-1<x>t n <x> = <x^2> on the radius-8 ball", m1.empty(), m1);
  checks.add("t<x>t^-1 n <x> = <x> on the radius-8 ball", m2.empty(), m2);

  const HausdorffProfile p = profile(q, t, opt, checks);
  checks.add("profile of <x> against t is bounded", p.verdict == ProfileVerdict::Bounded);
  reports["profile"] = to_json(*g, p);
  return {Json{{"example", 1}, {"group", g->spec()}, {"subgroup", q->spec()},
               {"checks", checks.list}, {"reports", reports}, {"pass", checks.pass}},
          checks.pass, checks.conclusive};
}

ExampleResult example2(const ShowcaseOptions& opt) {
  Checks checks;
  Json reports;
  Json ladder = Json::array();
  bool ladder_ok = true;
  for (std::size_t n = 1; n <= 8; ++n) {
    IntMatrix x0(1, n + 1);
    x0(0, 0) = 1;
    const QuotientInvariants inv = quotient_invariants(ladder_relations(n), x0);
    Json torsion = Json::array();
    for (const auto& d : inv.torsion) torsion.push_back(d.get_str());
    bool ok = inv.free_rank == 0 && inv.torsion.size() == n;
    for (const auto& d : inv.torsion) ok = ok && d == 2;
    ladder_ok = ladder_ok && ok;
    ladder.push_back({{"n", n}, {"freeRank", inv.free_rank}, {"torsion", torsion}});
  }
  checks.add("H_n/<x0> = (Z/2)^n for n <= 8", ladder_ok);
  reports["ladderQuotients"] = std::move(ladder);

  const GroupPtr g = build_group("ex2hnn:2");
  const Word t = g->parse("t");
  const SubgroupPtr x0 = subgroup_of(g, "cyclic-span:x0");
  const SubgroupPtr base = subgroup_of(g, "base");
  const HausdorffProfile px = profile(x0, t, opt, checks);
  const HausdorffProfile pb = profile(base, t, opt, checks);
  checks.add("profile of <x0> against t is bounded", px.verdict == ProfileVerdict::Bounded);
  checks.add("profile of the base against t is growing", pb.verdict == ProfileVerdict::Growing);
  reports["x0Profile"] = to_json(*g, px);
  reports["baseProfile"] = to_json(*g, pb);
  reports["note"] =
      "<x0> has finite index in every finite ladder H_n, so the base and <x0> are "
      "commensurable here; an unbounded base profile needs the infinite ladder";
  return {Json{{"example", 2}, {"group", g->spec()}, {"checks", checks.list},
               {"reports", reports}, {"pass", checks.pass}},
          checks.pass, checks.conclusive};
}

ExampleResult example3(const ShowcaseOptions& opt) {
  const auto g = std::dynamic_pointer_cast<const HnnGroup>(build_group("ex3"));
  const SubgroupPtr base = subgroup_of(g, "base");
  const SubgroupPtr x2 = subgroup_of(g, "cyclic-span:x^2");
  const SubgroupPtr x4 = subgroup_of(g, "cyclic-span:x^4");
  const Word t = g->parse("t");
  const Word tinv = g->parse("t^-1");
  Checks checks;
  Json reports;

  const SubgroupPtr both = intersect_subgroups(conjugate_subgroup(base, tinv), base);
  const Ball ball(*g->base(), 8);
  Json bad_membership = Json::array(), bad_reduction = Json::array();
  std::size_t in_x4 = 0;
  for (const auto& e : ball.elements()) {
    const Word& w = e.nf;
    if (both->contains_exact(w) != x4->contains_exact(w)) bad_membership.push_back(g->format(w));
    const Word conj = g->britton_reduce(concat(concat(tinv, w), t));
    const bool lands_in_base = g->t_length(conj) == 0;
    if (lands_in_base != x2->contains_exact(w)) bad_reduction.push_back(g->format(w));
    if (lands_in_base) {
      if (x4->contains_exact(conj)) ++in_x4;
      else bad_reduction.push_back(g->format(w));
    }
  }
  checks.add("t^-1<x,y>t n <x,y> = <x^4> on base words of length <= 8", bad_membership.empty(),
             Json{{"elements", ball.size()}, {"mismatches", bad_membership}});
  checks.add("t^-1 w t reduces into the base iff w in <x^2>, landing in <x^4>",
             bad_reduction.empty(), Json{{"landed", in_x4}, {"mismatches", bad_reduction}});

  const HausdorffProfile p = profile(base, t, opt, checks);
  checks.add("profile of <x,y> against t is growing", p.verdict == ProfileVerdict::Growing);
  reports["profile"] = to_json(*g, p);
  return {Json{{"example", 3}, {"group", g->spec()}, {"subgroup", base->spec()},
               {"checks", checks.list}, {"reports", reports}, {"pass", checks.pass}},
          checks.pass, checks.conclusive};
}

ExampleResult example4(const ShowcaseOptions&) {
  const GroupPtr g = build_group("bs:1,2");
  const SubgroupPtr q = subgroup_of(g, "cyclic-span:x");
  const std::uint32_t x = 0, t = 1;
  Checks checks;
  Json reports;

  const LabeledGraph tree = coset_graph_ball(q, 6, 0);
  bool trivalent = true;
  for (std::size_t v = 0; v < tree.vertices.size(); ++v)
    if (tree.depth[v] <= 5 && tree.valence(v) != 3) trivalent = false;
  checks.add("coset graph ball of radius 6 is a tree", is_tree(tree),
             Json{{"vertices", tree.vertices.size()}});
  checks.add("every vertex within distance 5 has 3 neighbours", trivalent);

  const ValenceProfile vp = valence_profile(
      [&](std::size_t r) { return coset_graph_ball(q, r, 0); }, tree.vertices[0], {2, 4, 6});
  reports["valence"] = to_json(vp);

  const LabeledGraph quot = quotient_graph_ball(q, 12);
  Json cycles = Json::array();
  bool cycles_ok = true;
  for (long k = 1; k <= 3; ++k) {
    const auto v = quot.find(g->format(generator_power(t, k)));
    const std::size_t len = v ? label_cycle_length(quot, *v, x).value_or(0) : 0;  // 0: truncated
    cycles_ok = cycles_ok && len == (std::size_t{1} << k);
    Json entry{{"level", k}, {"length", nullptr}};
    if (len) entry["length"] = len;
    cycles.push_back(std::move(entry));
  }
  checks.add("x-cycle at level k has length 2^k, k = 1..3", cycles_ok, cycles);

  bool loops_ok = true;
  for (long i = 1; i <= 3; ++i) {
    const auto v = quot.find(g->format(generator_power(t, -i)));
    bool has = false;
    for (const auto& [u, s] : quot.self_loops) has = has || (v && u == *v && s == x);
    loops_ok = loops_ok && has;
  }
  checks.add("x self-loops at levels -1..-3", loops_ok);

  // Inside the part of the quotient at levels <= k that contains Q, cutting
  // away levels >= 0 leaves one downward ray per vertex of the level-k cycle.
  std::vector<long> level(quot.vertices.size());
  for (std::size_t v = 0; v < level.size(); ++v) level[v] = vertex_level(quot, *g, v, t);
  Json rays = Json::array();
  bool rays_ok = true;
  for (long k = 1; k <= 3; ++k) {
    std::vector<bool> keep(level.size());
    for (std::size_t v = 0; v < keep.size(); ++v) keep[v] = level[v] <= k;
    std::vector<bool> lower(level.size(), false);
    for (const auto& comp : components(quot, keep)) {
      if (comp.front() != 0) continue;
      for (std::size_t v : comp) lower[v] = level[v] < 0;
    }
    const std::size_t n = components(quot, lower).size();
    rays_ok = rays_ok && n == (std::size_t{1} << k);
    rays.push_back({{"level", k}, {"rays", n}});
  }
  checks.add("the level-k piece through Q has 2^k downward rays, k = 1..3", rays_ok, rays);

  const EndsReport tree_ends = ends_estimate(coset_graph_ball(q, 8, 0), {1, 2, 3});
  bool counts_ok = true;
  for (const auto& [r, n] : tree_ends.counts) counts_ok = counts_ok && n == 3 * (std::size_t{1} << (r - 1));
  checks.add("coset graph ends: 3*2^(r-1) components, many-ends pattern",
             counts_ok && tree_ends.classification == EndsClass::ManyUncountablePattern);
  reports["cosetGraphEnds"] = to_json(tree_ends);
  reports["quotientGraphEnds"] = to_json(ends_estimate(quot, {1, 2, 3}));
  return {Json{{"example", 4}, {"group", g->spec()}, {"subgroup", q->spec()},
               {"checks", checks.list}, {"reports", reports}, {"pass", checks.pass}},
          checks.pass, checks.conclusive};
}

}  // namespace

std::optional<std::size_t> label_cycle_length(const LabeledGraph& g, std::size_t v, std::uint32_t label) {
  for (const auto& [u, s] : g.self_loops)
    if (u == v && s == label) return 1;
  std::map<std::size_t, std::size_t> next;
  for (const auto& e : g.edges)
    if (e.label == label) next[e.src] = e.dst;
  std::size_t cur = v, steps = 0;
  do {
    auto it = next.find(cur);
    if (it == next.end()) return std::nullopt;
    cur = it->second;
    ++steps;
  } while (cur != v && steps <= g.vertices.size());
  if (cur != v) return std::nullopt;
  return steps;
}

long vertex_level(const LabeledGraph& g, const Group& group, std::size_t v, std::uint32_t gen) {
  long sum = 0;
  for (Letter l : group.parse(g.vertices[v]))
    if (l.index == gen) sum += l.sign;
  return sum;
}

ExampleResult run_example(int n, const ShowcaseOptions& opt) {
  switch (n) {
    case 1: return example1(opt);
    case 2: return example2(opt);
    case 3: return example3(opt);
    case 4: return example4(opt);
  }
  throw Error(Errc::PreconditionViolation, "example number must be 1..4");
}

}  // namespace commlab
