#include "commlab/report.hpp"

namespace commlab {

namespace {

Json words(const Group& g, const std::vector<Word>& ws) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(g.format(w));
  return out;
}

}  // namespace

Json to_json(const Group& g, const HausdorffProfile& p) {
  Json j;
  j["g"] = g.format(p.g);
  j["radii"] = p.radii;
  j["lowerBounds"] = p.lower_bounds;
  Json ex = Json::array();
  for (bool b : p.exceeded) ex.push_back(b);
  j["exceeded"] = std::move(ex);
  j["witnessRadius"] = p.witness_radius;
  j["verdict"] = std::string(to_string(p.verdict));
  if (p.verdict == ProfileVerdict::Bounded) j["bound"] = p.bound;
  j["tainted"] = p.tainted;
  return j;
}

Json to_json(const PackingCensus& c) {
  Json j;
  j["D"] = c.d;
  Json counts = Json::array();
  for (const auto& [r, n] : c.counts) counts.push_back({{"radius", r}, {"count", n}});
  j["counts"] = std::move(counts);
  j["trend"] = std::string(to_string(c.trend));
  j["tainted"] = c.tainted;
  return j;
}

Json to_json(const EndsReport& e) {
  Json j;
  j["probeRadius"] = e.probe_radius;
  Json counts = Json::array();
  for (const auto& [r, n] : e.counts) counts.push_back({{"removedRadius", r}, {"components", n}});
  j["componentCounts"] = std::move(counts);
  j["classification"] = std::string(to_string(e.classification));
  j["tainted"] = e.tainted;
  return j;
}

Json to_json(const ValenceProfile& v) {
  Json j;
  Json pts = Json::array();
  for (const auto& [p, n] : v.points) pts.push_back({{"parameter", p}, {"valence", n}});
  j["points"] = std::move(pts);
  j["verdict"] = std::string(to_string(v.verdict));
  j["tainted"] = v.tainted;
  return j;
}

Json to_json(const Group& g, const VerifyReport& v) {
  Json j;
  j["passed"] = v.passed;
  j["radius"] = v.radius;
  j["checked"] = v.checked;
  if (v.failing) {
    j["counterexample"] = g.format(*v.failing);
    j["reason"] = v.reason;
  }
  return j;
}

Json to_json(Witness& w, std::size_t radius) {
  const Group& g = *w.subgroup->ambient();
  Json j;
  j["group"] = g.spec();
  j["subgroup"] = w.subgroup->spec();
  j["g"] = g.format(w.g);
  j["A"] = words(g, w.a_set);
  j["B"] = words(g, w.b_set);
  Json alpha = Json::array(), beta = Json::array();
  for (const auto& h : subgroup_ball(w.subgroup, radius)) {
    const auto a = w.alpha(h);
    const auto b = w.beta(h);
    alpha.push_back({g.format(h), a ? Json(g.format(*a)) : Json()});
    beta.push_back({g.format(h), b ? Json(g.format(*b)) : Json()});
  }
  j["alpha"] = std::move(alpha);
  j["beta"] = std::move(beta);
  j["verifiedRadius"] = w.verified_radius;
  return j;
}

Json to_json(const Group& g, const Lemma18Report& r) {
  Json j;
  j["k"] = r.k;
  Json profiles = Json::array();
  for (const auto& p : r.generator_profiles) profiles.push_back(to_json(g, p));
  j["generatorProfiles"] = std::move(profiles);
  j["checked"] = r.checked;
  j["violations"] = r.violations;
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    Json x;
    if (!s.a.empty()) x["a"] = g.format(s.a);
    x["b"] = g.format(s.b);
    x["item"] = s.item;
    x["measured"] = s.measured;
    x["bound"] = s.bound;
    x["pass"] = s.pass;
    samples.push_back(std::move(x));
  }
  j["samples"] = std::move(samples);
  j["tainted"] = r.tainted;
  return j;
}

Json to_json(const DefectResult& d) {
  return Json{{"measured", d.measured}, {"bound", d.bound}, {"pass", d.pass}, {"exceeded", d.exceeded}};
}

Json to_json(const InvariantSetReport& r) {
  return Json{{"checked", r.checked}, {"violations", r.violations}, {"separated", r.separated}};
}

}  // namespace commlab
