#include "commlab/lemma18.hpp"

#include <algorithm>

#include "commlab/ball.hpp"
#include "commlab/distance.hpp"
#include "commlab/error.hpp"
#include "commlab/parallel.hpp"

namespace commlab {

namespace {

std::vector<Word> members_in(const Subgroup& q, const Ball& ball, std::size_t radius) {
  std::vector<Word> out;
  for (std::size_t i = 0; i < ball.count_within(radius); ++i)
    if (q.contains_exact(ball[i].nf)) out.push_back(ball[i].nf);
  return out;
}

std::size_t geodesic_length(const Group& g, const Word& w) {
  const Word nf = g.normal_form(w);
  for (std::size_t r = 0; r <= 16; ++r) {
    const Ball ball(g, r);
    if (ball.find(nf)) return r;
  }
  throw Error(Errc::BudgetExceeded, "word length of " + g.format(nf) + " exceeds 16");
}

// Largest d(z, Q) over the products, cap + 1 when some distance is beyond the cap.
std::size_t worst(CosetDistance& d, const std::vector<Word>& zs) {
  std::size_t out = 0;
  for (const auto& z : zs) {
    const auto v = d(z);
    out = std::max(out, v ? *v : d.cap() + 1);
  }
  return out;
}

}  // namespace

std::size_t lemma18_constant(const SubgroupPtr& q, const Lemma18Options& opt,
                             std::vector<HausdorffProfile>* profiles) {
  const Group& G = *q->ambient();
  std::size_t k = 0;
  for (Letter s : G.letters()) {
    ProfileOptions po;
    po.r_max = opt.profile_radius;
    po.cap = opt.cap;
    po.workers = opt.workers;
    HausdorffProfile p = hausdorff_profile(q, Word{s}, po);
    if (p.verdict != ProfileVerdict::Bounded) {
      throw Error(Errc::ProfileNotStabilized,
                  "profile for " + G.alphabet().letter_name(s) + " is " + std::string(to_string(p.verdict)));
    }
    k = std::max(k, p.bound);
    if (profiles) profiles->push_back(std::move(p));
  }
  return k + 1;
}

Lemma18Report lemma18_check(const SubgroupPtr& q, const Lemma18Options& opt) {
  const GroupPtr G = q->ambient();
  Lemma18Report rep;
  rep.k = lemma18_constant(q, opt, &rep.generator_profiles);
  const std::size_t k = rep.k;

  const Ball ball(*G, std::max(opt.b_radius, opt.q_radius));
  const std::vector<Word> qs = members_in(*q, ball, opt.q_radius);
  const std::size_t nb = ball.count_within(opt.b_radius);

  const std::size_t workers = std::max<std::size_t>(1, opt.workers);
  std::vector<CosetDistance> oracles;
  for (std::size_t w = 0; w < workers; ++w) oracles.emplace_back(q, opt.cap);
  std::vector<std::vector<Lemma18Sample>> found(nb);
  std::vector<std::size_t> counted(nb, 0);

  parallel_for(nb, workers, [&](std::size_t w, std::size_t i) {
    CosetDistance& d = oracles[w];
    const Word& b = ball[i].nf;
    const std::size_t len = ball[i].depth;
    const Word binv = G->normal_form(inverse(b));
    auto record = [&](Word a, int item, std::size_t measured, std::size_t bound) {
      ++counted[i];
      Lemma18Sample s{std::move(a), b, item, measured, bound, measured <= bound};
      if (!s.pass || opt.keep_passing) found[i].push_back(std::move(s));
    };

    std::vector<Word> zs;
    for (const auto& x : qs) {
      zs.push_back(concat(binv, x));
      zs.push_back(concat(b, x));
    }
    record({}, 1, worst(d, zs), k * len);

    zs.clear();
    for (const auto& x : qs) zs.push_back(G->normal_form(concat(concat(b, x), binv)));
    std::size_t m2 = worst(d, zs);
    CosetDistance conj(conjugate_subgroup(q, b), opt.cap);
    m2 = std::max(m2, worst(conj, qs));
    record({}, 2, m2, (k + 1) * len);

    zs.clear();
    for (const auto& x : qs) zs.push_back(concat(b, x));
    record({}, 3, worst(d, zs), k * len);

    zs.clear();
    for (const auto& x : qs)
      for (const auto& y : qs) zs.push_back(concat(concat(concat(binv, x), b), y));
    record({}, 4, worst(d, zs), 2 * k * len);

    if (!opt.pairs) return;
    for (std::size_t j = 0; j < nb; ++j) {
      const Word& a = ball[j].nf;
      const Word lead = concat(G->normal_form(inverse(concat(a, b))), a);
      zs.clear();
      for (const auto& x : qs)
        for (const auto& y : qs) zs.push_back(concat(concat(concat(lead, x), b), y));
      record(a, 4, worst(d, zs), 2 * k * len);
    }
  });

  for (std::size_t i = 0; i < nb; ++i) {
    rep.checked += counted[i];
    for (auto& s : found[i]) {
      if (!s.pass) ++rep.violations;
      rep.samples.push_back(std::move(s));
    }
  }
  for (const auto& o : oracles) rep.tainted = rep.tainted || o.tainted();
  return rep;
}

DefectResult quasi_hom_defect(const SubgroupPtr& q, const Word& a, const Word& b, std::size_t k,
                              std::size_t q_radius, std::size_t cap) {
  const GroupPtr G = q->ambient();
  const Ball ball(*G, q_radius);
  const std::vector<Word> qs = members_in(*q, ball, q_radius);
  const Word lead = concat(G->normal_form(inverse(concat(a, b))), a);
  std::vector<Word> zs;
  for (const auto& x : qs)
    for (const auto& y : qs) zs.push_back(concat(concat(concat(lead, x), b), y));
  CosetDistance d(q, cap);
  DefectResult out;
  out.measured = worst(d, zs);
  out.exceeded = out.measured > cap;
  out.bound = 2 * k * geodesic_length(*G, b);
  out.pass = out.measured <= out.bound;
  return out;
}

InvariantSetReport invariant_set_check(const SubgroupPtr& q, std::size_t radius, std::size_t q_radius) {
  const Group& G = *q->ambient();
  const Ball ball(G, std::max(radius, q_radius));
  const std::vector<Word> qs = members_in(*q, ball, q_radius);
  InvariantSetReport rep;
  auto same = [&](const Word& x, const Word& y) {
    return q->contains_exact(G.normal_form(concat(inverse(x), y)));
  };
  for (std::size_t i = 0; i < ball.count_within(radius); ++i) {
    const Word& g = ball[i].nf;
    for (const auto& x : qs) {
      ++rep.checked;
      if (!same(G.multiply(g, x), g)) ++rep.violations;
    }
    if (!q->contains_exact(g)) {
      ++rep.checked;
      if (same(g, Word{})) ++rep.violations;
      else ++rep.separated;
    }
  }
  return rep;
}

}  // namespace commlab
