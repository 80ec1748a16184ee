#include "commlab/hausdorff.hpp"

#include <algorithm>
#include <set>

#include "commlab/ball.hpp"
#include "commlab/distance.hpp"
#include "commlab/parallel.hpp"

namespace commlab {

std::string_view to_string(ProfileVerdict v) noexcept {
  switch (v) {
    case ProfileVerdict::Bounded: return "BoundedEvidence";
    case ProfileVerdict::Growing: return "GrowingEvidence";
    case ProfileVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string_view to_string(CensusTrend t) noexcept {
  return t == CensusTrend::Stable ? "Stable" : "Growing";
}

ProfileVerdict classify_profile(const std::vector<std::size_t>& v, std::size_t* bound) {
  if (v.size() < 2) return ProfileVerdict::Inconclusive;
  const std::size_t half = (v.size() + 1) / 2;
  const std::size_t from = v.size() - half;
  bool constant = true, increasing = true;
  for (std::size_t i = from; i < v.size(); ++i) {
    constant = constant && v[i] == v.back();
    if (i > from) increasing = increasing && v[i] > v[i - 1];
  }
  if (half < 2) increasing = false;
  if (constant) {
    if (bound) *bound = v.back();
    return ProfileVerdict::Bounded;
  }
  return increasing ? ProfileVerdict::Growing : ProfileVerdict::Inconclusive;
}

HausdorffProfile hausdorff_profile(const SubgroupPtr& h, const Word& g, const ProfileOptions& opt) {
  const Group& G = *h->ambient();
  const Ball ball(G, opt.r_max, opt.steps);
  const Word ginv = G.normal_form(inverse(g));

  struct Value {
    std::size_t d = 0;
    bool present = false, over = false, unknown = false;
  };
  std::vector<Value> values(ball.size());
  const std::size_t workers = std::max<std::size_t>(1, opt.workers);
  std::vector<CosetDistance> oracles;
  for (std::size_t w = 0; w < workers; ++w) oracles.emplace_back(h, opt.cap, opt.steps);

  parallel_for(ball.size(), workers, [&](std::size_t w, std::size_t i) {
    const Word& e = ball[i].nf;
    Value& out = values[i];
    auto take = [&](const Word& z) {
      const auto d = oracles[w](z);
      out.present = true;
      if (!d) out.over = true;
      else out.d = std::max(out.d, *d);
    };
    const Word shifted = G.multiply(ginv, e);
    const Membership in_h = h->contains(e);
    const Membership in_gh = h->contains(shifted);
    out.unknown = in_h.unknown() || in_gh.unknown();
    if (in_h.yes()) take(shifted);  // d(e, gH) = d(g^-1 e, H)
    if (in_gh.yes()) take(e);
  });

  HausdorffProfile p;
  p.g = G.normal_form(g);
  p.witness_radius = opt.cap;
  for (const auto& o : oracles) p.tainted = p.tainted || o.tainted();
  std::size_t running = 0;
  bool over = false;
  std::size_t i = 0;
  for (std::size_t r = 0; r <= opt.r_max; ++r) {
    for (; i < ball.count_within(r); ++i) {
      const Value& v = values[i];
      p.tainted = p.tainted || v.unknown;
      if (!v.present) continue;
      if (v.over) over = true;
      running = std::max(running, v.d);
    }
    p.radii.push_back(r);
    p.lower_bounds.push_back(over ? opt.cap + 1 : running);
    p.exceeded.push_back(over);
  }
  p.verdict = classify_profile(p.lower_bounds, &p.bound);
  if (p.verdict == ProfileVerdict::Bounded && p.exceeded.back()) p.verdict = ProfileVerdict::Inconclusive;
  if (p.tainted) p.verdict = ProfileVerdict::Inconclusive;
  return p;
}

PackingCensus packing_census(const SubgroupPtr& h, std::size_t d,
                             const std::vector<std::size_t>& radii) {
  const Group& G = *h->ambient();
  PackingCensus out;
  out.d = d;
  const std::size_t r_top = radii.empty() ? 0 : *std::max_element(radii.begin(), radii.end());
  const Ball ball(G, r_top);
  const Ball near(G, d);

  for (std::size_t r : radii) {
    std::set<std::string> keys;
    std::vector<Word> found;  // keyless subgroups: one representative per coset
    for (std::size_t i = 0; i < ball.count_within(r); ++i) {
      const Membership m = h->contains(ball[i].nf);
      if (m.unknown()) out.tainted = true;
      if (!m.yes()) continue;
      for (const auto& w : near.elements()) {
        const Word p = G.multiply(ball[i].nf, w.nf);
        const auto at = ball.find(p);
        if (!at || ball[*at].depth > r) continue;
        if (h->has_keys()) {
          keys.insert(*h->left_key(p));
          continue;
        }
        bool seen = false;
        for (const auto& f : found) {
          const Membership same = h->contains(G.normal_form(concat(inverse(f), p)));
          if (same.unknown()) out.tainted = true;
          if (same.yes()) {
            seen = true;
            break;
          }
        }
        if (!seen) found.push_back(p);
      }
    }
    out.counts.emplace_back(r, h->has_keys() ? keys.size() : found.size());
  }
  std::vector<std::size_t> c;
  for (const auto& [r, n] : out.counts) c.push_back(n);
  bool stable = !c.empty();
  for (std::size_t i = c.size() - (c.size() + 1) / 2; i < c.size(); ++i)
    stable = stable && c[i] == c.back();
  out.trend = stable ? CensusTrend::Stable : CensusTrend::Growing;
  return out;
}

}  // namespace commlab
