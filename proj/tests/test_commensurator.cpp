#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "commlab/ball.hpp"
#include "commlab/catalog.hpp"
#include "commlab/error.hpp"
#include "commlab/hausdorff.hpp"
#include "commlab/hom.hpp"
#include "commlab/lemma18.hpp"
#include "commlab/witness.hpp"
#include "oracles.hpp"

using namespace commlab;

namespace {

const std::string data = COMMLAB_TEST_DATA;

bool in_x(const oracle::Affine& a) { return a.scale == 1 && a.shift.get_den() == 1; }

oracle::Affine inv(const oracle::Affine& a) {
  oracle::Affine out;
  out.scale = 1 / a.scale;
  out.shift = -a.shift / a.scale;
  out.scale.canonicalize();
  out.shift.canonicalize();
  return out;
}

using Steps = std::vector<oracle::Affine>;

Steps letter_steps() {
  return {oracle::bs12(Word{{0, 1}}), oracle::bs12(Word{{0, -1}}), oracle::bs12(Word{{1, 1}}),
          oracle::bs12(Word{{1, -1}})};
}

std::string akey(const oracle::Affine& a) { return a.scale.get_str() + "|" + a.shift.get_str(); }

// d(z, <x>) in BS(1,2), breadth first on affine maps.
std::size_t bs_dist(const oracle::Affine& z, const Steps& steps) {
  std::vector<oracle::Affine> layer{z};
  std::set<std::string> seen{akey(z)};
  for (std::size_t d = 0;; ++d) {
    for (const auto& a : layer)
      if (in_x(a)) return d;
    std::vector<oracle::Affine> next;
    for (const auto& a : layer)
      for (const auto& s : steps) {
        const oracle::Affine b = oracle::compose(a, s);
        if (seen.insert(akey(b)).second) next.push_back(b);
      }
    layer = std::move(next);
  }
}

// The truncated profile of <x> at g, from the affine model alone, in the
// word metric of `steps`.
std::vector<std::size_t> bs_profile(const Word& g, std::size_t r_max, const Steps& steps = letter_steps()) {
  const oracle::Affine gi = inv(oracle::bs12(g));
  std::vector<std::size_t> best(r_max + 1, 0);
  std::vector<oracle::Affine> layer{oracle::Affine{}};
  std::set<std::string> seen{akey(layer.front())};
  for (std::size_t r = 0; r <= r_max; ++r) {
    for (const auto& a : layer) {
      std::size_t v = 0;
      if (in_x(a)) v = std::max(v, bs_dist(oracle::compose(gi, a), steps));
      if (in_x(oracle::compose(gi, a))) v = std::max(v, bs_dist(a, steps));
      for (std::size_t q = r; q <= r_max; ++q) best[q] = std::max(best[q], v);
    }
    std::vector<oracle::Affine> next;
    for (const auto& a : layer)
      for (const auto& s : steps) {
        const oracle::Affine b = oracle::compose(a, s);
        if (seen.insert(akey(b)).second) next.push_back(b);
      }
    layer = std::move(next);
  }
  return best;
}

WitnessMap chooser(const SubgroupPtr& h, std::vector<Word> set, Word left) {
  return [h, set, left](const Word& q) -> std::optional<Word> {
    for (const auto& c : set)
      if (h->contains_exact(concat(concat(left, q), c))) return c;
    return std::nullopt;
  };
}

SubgroupPtr bs_x() { return subgroup_of(build_group("bs:1,2"), "cyclic-span:x"); }

Witness bs_t_witness() {
  const auto h = bs_x();
  auto w = witness_search(h, h->ambient()->parse("t"), {});
  REQUIRE(w);
  return *w;
}

}  // namespace

TEST_CASE("classify_profile") {
  std::size_t k = 0;
  CHECK(classify_profile({1, 1, 2, 2, 2, 2, 2}, &k) == ProfileVerdict::Bounded);
  CHECK(k == 2);
  CHECK(classify_profile({1, 2, 3, 4, 5, 6, 7}) == ProfileVerdict::Growing);
  CHECK(classify_profile({1, 2, 3, 3, 4, 4, 4}) == ProfileVerdict::Inconclusive);
  CHECK(classify_profile({0, 0}) == ProfileVerdict::Bounded);
}

TEST_CASE("BS(1,2) profiles against the affine model") {
  const auto h = bs_x();
  const auto& g = h->ambient();
  for (const char* gw : {"t", "x", "t^-1", "x t", "t x t^-1"}) {
    ProfileOptions opt;
    opt.r_max = 5;
    const auto p = hausdorff_profile(h, g->parse(gw), opt);
    CHECK_MESSAGE(p.lower_bounds == bs_profile(g->parse(gw), 5), gw);
    CHECK(p.verdict == ProfileVerdict::Bounded);
    CHECK_FALSE(p.tainted);
  }
  ProfileOptions opt;
  const auto p = hausdorff_profile(h, g->parse("t"), opt);
  CHECK(p.lower_bounds == std::vector<std::size_t>{1, 1, 2, 2, 2, 2, 2});
  CHECK(p.bound == 2);
  CHECK(hausdorff_profile(h, g->parse("x"), opt).bound == 0);
}

TEST_CASE("profiles in F2 grow") {
  // d(y^-1 x^m, <x>) = |m| + 1, so the value at radius r is r + 1
  const auto h = subgroup_of(build_group("free:2"), "cyclic-span:x");
  ProfileOptions opt;
  const auto p = hausdorff_profile(h, h->ambient()->parse("y"), opt);
  for (std::size_t r = 0; r < p.lower_bounds.size(); ++r) CHECK(p.lower_bounds[r] == r + 1);
  CHECK(p.verdict == ProfileVerdict::Growing);

  opt.cap = 3;
  const auto capped = hausdorff_profile(h, h->ambient()->parse("y"), opt);
  CHECK(capped.lower_bounds.back() == 4);
  CHECK(capped.exceeded.back());
  CHECK(capped.verdict != ProfileVerdict::Bounded);
}

TEST_CASE("profile under another generating set") {
  const auto h = bs_x();
  ProfileOptions opt;
  opt.steps = {h->ambient()->parse("x^2"), h->ambient()->parse("x^-2"), h->ambient()->parse("t"),
               h->ambient()->parse("t^-1")};
  opt.r_max = 10;
  const auto p = hausdorff_profile(h, h->ambient()->parse("t"), opt);
  Steps model;
  for (const auto& w : opt.steps) model.push_back(oracle::bs12(w));
  CHECK(p.lower_bounds == bs_profile(h->ambient()->parse("t"), 10, model));
  CHECK(p.verdict == ProfileVerdict::Bounded);
  CHECK(p.bound == 4);

  // the jump to 4 comes late: at r_max = 6 the tail is 1 4 4 4
  opt.r_max = 6;
  CHECK(hausdorff_profile(h, h->ambient()->parse("t"), opt).verdict == ProfileVerdict::Inconclusive);
}

TEST_CASE("profile workers agree") {
  const auto h = subgroup_of(build_group("ex3"), "base");
  ProfileOptions one, four;
  one.r_max = four.r_max = 4;
  four.workers = 4;
  const Word t = h->ambient()->parse("t");
  CHECK(hausdorff_profile(h, t, one).lower_bounds == hausdorff_profile(h, t, four).lower_bounds);
}

TEST_CASE("witness for t over <x> in BS(1,2)") {
  Witness w = bs_t_witness();
  const auto& g = w.subgroup->ambient();
  CHECK(w.a_set == std::vector<Word>{g->parse("t")});
  CHECK(w.b_set == std::vector<Word>{g->parse("t^-1"), g->parse("x t^-1")});
  const auto rep = witness_verify(w, 12);
  CHECK(rep.passed);
  CHECK(w.verified_radius == 12);

  // the defining property through the affine model
  const auto ti = oracle::bs12(g->parse("t^-1")), t = oracle::bs12(g->parse("t"));
  for (long m = -12; m <= 12; ++m) {
    const Word h = generator_power(0, m);
    const auto a = w.alpha(h), b = w.beta(h);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(in_x(oracle::compose(oracle::compose(ti, oracle::bs12(h)), oracle::bs12(*a))));
    CHECK(in_x(oracle::compose(oracle::compose(t, oracle::bs12(h)), oracle::bs12(*b))));
  }
}

TEST_CASE("a corrupted witness is caught") {
  Witness w = bs_t_witness();
  const auto& g = w.subgroup->ambient();
  w.b_set = {g->parse("t^-1")};
  w.beta = chooser(w.subgroup, w.b_set, w.g);
  const auto rep = witness_verify(w, 6);
  CHECK_FALSE(rep.passed);
  REQUIRE(rep.failing);
  CHECK(g->format(*rep.failing) == "x");
}

TEST_CASE("no witness for y over <x> in F2") {
  const auto h = subgroup_of(build_group("free:2"), "cyclic-span:x");
  CHECK_FALSE(witness_search(h, h->ambient()->parse("y"), {}));
  CHECK(witness_search(h, h->ambient()->parse("x^3"), {}));
}

TEST_CASE("inverse and transport") {
  const Witness w = bs_t_witness();
  const auto& g = w.subgroup->ambient();
  Witness i = witness_invert(w);
  CHECK(g->format(i.g) == "t^-1");
  CHECK(witness_verify(i, 10).passed);

  for (const char* k : {"t", "t x^-1"}) {
    Witness tr = witness_transport(w, g->parse(k));
    CHECK(g->equal(tr.g, g->parse(k)));
    CHECK_MESSAGE(witness_verify(tr, 8).passed, k);
  }
  CHECK_THROWS_AS(witness_transport(w, g->parse("x t x")), Error);
}

TEST_CASE("finite index in both directions") {
  const Witness w = bs_t_witness();
  const auto& g = w.subgroup->ambient();
  const auto even = subgroup_of(g, "cyclic-span:x^2");
  Witness sub = witness_finite_index(w, even, {Word{}, g->parse("x")}, IndexDirection::Sub, 8);
  CHECK(witness_verify(sub, 8).passed);

  auto we = witness_search(even, g->parse("t"), {});
  REQUIRE(we);
  Witness super = witness_finite_index(*we, w.subgroup, {Word{}, g->parse("x")}, IndexDirection::Super, 8);
  CHECK(witness_verify(super, 8).passed);
}

TEST_CASE("intersection of index-two subgroups of F2") {
  const GroupPtr g = build_group("free:2");
  const auto a = subgroup_of(g, "coset-table:" + data + "/f2_even_x.txt");
  const auto b = subgroup_of(g, "coset-table:" + data + "/f2_even_y.txt");
  const Word xy = g->parse("x y");
  auto wa = witness_search(a, xy, {});
  auto wb = witness_search(b, xy, {});
  REQUIRE(wa);
  REQUIRE(wb);
  const auto both = intersect_subgroups(a, b);
  Witness w = witness_intersect(*wa, *wb, both, 6);
  CHECK(witness_verify(w, 6).passed);
}

TEST_CASE("finite-index subgroups of F2 have witnesses for every generator") {
  const GroupPtr g = build_group("free:2");
  for (const char* f : {"f2_even_x.txt", "f2_even_y.txt", "f2_even_both.txt"}) {
    const auto h = subgroup_of(g, std::string("coset-table:") + data + "/" + f);
    for (const char* s : {"x", "y", "x^-1", "y^-1"}) {
      auto w = witness_search(h, g->parse(s), {});
      REQUIRE_MESSAGE(w, f, " ", s);
      CHECK(witness_verify(*w, 6).passed);
    }
  }
}

TEST_CASE("ascending HNN base is commensurated by t and t^-1") {
  const GroupPtr g = build_group("asc-hnn:abelian:1:x^2");
  const auto h = subgroup_of(g, "base");
  for (const char* s : {"t", "t^-1"}) {
    auto w = witness_search(h, g->parse(s), {});
    REQUIRE_MESSAGE(w, s);
    CHECK(witness_verify(*w, 8).passed);
  }
}

TEST_CASE("push and pull along the ladder map") {
  const GroupPtr e1 = build_group("ex2hnn:1"), bs = build_group("bs:1,2");
  const HomPtr f = ladder_to_bs(e1, bs);
  const auto src = subgroup_of(e1, "cyclic-span:x0");
  auto w = witness_search(src, e1->parse("t"), {});
  REQUIRE(w);
  const auto bx = subgroup_of(bs, "cyclic-span:x");
  Witness pushed = witness_pushforward(f, *w, bx);
  CHECK(bs->equal(pushed.g, bs->parse("t")));
  CHECK(witness_verify(pushed, 8).passed);

  auto found = witness_search(bx, bs->parse("t"), {});
  REQUIRE(found);
  const Witness& base = *found;
  const auto pre = preimage_subgroup(f, base.subgroup);
  Witness pulled = witness_pullback(f, base, e1->parse("t"), pre);
  CHECK(witness_verify(pulled, 5).passed);
}

TEST_CASE("coset-distance inequalities for <x> in BS(1,2)") {
  Lemma18Options opt;
  opt.b_radius = 3;
  opt.q_radius = 2;
  opt.workers = 3;
  std::vector<HausdorffProfile> profiles;
  CHECK(lemma18_constant(bs_x(), opt, &profiles) == 3);
  CHECK(profiles.size() == 4);  // x, t and inverses
  const auto rep = lemma18_check(bs_x(), opt);
  CHECK(rep.k == 3);
  CHECK(rep.checked > 0);
  CHECK(rep.violations == 0);
  CHECK_FALSE(rep.tainted);

  Lemma18Options serial = opt;
  serial.workers = 1;
  CHECK(lemma18_check(bs_x(), serial).checked == rep.checked);

  const auto f2 = subgroup_of(build_group("free:2"), "cyclic-span:x");
  CHECK_THROWS_AS(lemma18_constant(f2, opt), Error);
}

TEST_CASE("quasi-homomorphism defect and invariance") {
  const auto q = bs_x();
  const auto& g = q->ambient();
  const auto d = quasi_hom_defect(q, g->parse("t"), g->parse("t"), 3, 3, 20);
  CHECK(d.pass);
  CHECK(d.bound == 6);
  CHECK(d.measured == 0);

  const auto inv = invariant_set_check(q, 3, 3);
  CHECK(inv.checked > 0);
  CHECK(inv.violations == 0);
}

TEST_CASE("packing census") {
  const std::vector<std::size_t> radii{2, 3, 4, 5};
  const auto f2 = packing_census(subgroup_of(build_group("free:2"), "cyclic-span:x"), 1, radii);
  for (const auto& [r, n] : f2.counts) CHECK(n == 4 * r - 1);  // H, x^m y^{+-1} H with |m| < r
  CHECK(f2.trend == CensusTrend::Growing);

  const auto z2 = packing_census(subgroup_of(build_group("abelian:2"), "abelian-span:x"), 1, radii);
  for (const auto& [r, n] : z2.counts) CHECK(n == 3);
  CHECK(z2.trend == CensusTrend::Stable);

  const auto bs = packing_census(bs_x(), 1, radii);
  CHECK(bs.trend == CensusTrend::Stable);
  CHECK(bs.counts.back().second == 4);  // H, tH and the two halves t^-1 H, x t^-1 H
}

TEST_CASE("bounded profiles come in inverse pairs") {
  ProfileOptions opt;
  opt.r_max = 5;
  for (const auto& [spec, sub, g] : {std::tuple{"bs:1,2", "cyclic-span:x", "t"}, {"bs:1,2", "cyclic-span:x", "x t"},
                                     {"ex2hnn:1", "cyclic-span:x0", "t"}, {"abelian:2", "abelian-span:x", "y"}}) {
    CAPTURE(spec);
    CAPTURE(g);
    const auto h = subgroup_of(build_group(spec), sub);
    const Word w = h->ambient()->parse(g);
    REQUIRE(hausdorff_profile(h, w, opt).verdict == ProfileVerdict::Bounded);
    CHECK(hausdorff_profile(h, inverse(w), opt).verdict == ProfileVerdict::Bounded);
  }
}

TEST_CASE("a normal subgroup has constant profiles") {
  // yH is the parallel line at distance 1; x fixes H
  const auto h = subgroup_of(build_group("abelian:2"), "abelian-span:x");
  ProfileOptions opt;
  for (Letter l : h->ambient()->letters()) {
    const auto p = hausdorff_profile(h, Word{l}, opt);
    CHECK(p.lower_bounds == std::vector<std::size_t>(opt.r_max + 1, l.index == 0 ? 0 : 1));
  }
}

TEST_CASE("invariant set separates cosets") {
  const auto inv = invariant_set_check(bs_x(), 3, 3);
  CHECK(inv.separated > 0);
}
