#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commlab/ball.hpp"
#include "commlab/catalog.hpp"
#include "commlab/error.hpp"
#include "commlab/graph.hpp"
#include "commlab/hausdorff.hpp"
#include "commlab/hom.hpp"
#include "commlab/lemma18.hpp"
#include "commlab/report.hpp"
#include "commlab/showcase.hpp"
#include "commlab/witness.hpp"

using namespace commlab;

namespace {

constexpr int kConclusive = 0;
constexpr int kUsage = 1;
constexpr int kInconclusive = 2;

struct Config {
  std::string group, subgroup, format = "json", out;
  std::size_t workers = 1;
  std::size_t search_budget = 100;
};

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw Error(Errc::MalformedInput, "cannot write " + cfg.out);
  f << text << "\n";
}

void emit(const Config& cfg, const Json& j) { emit(cfg, j.dump(2)); }

GroupPtr group_of(const Config& cfg) { return build_group(cfg.group); }

SubgroupPtr subgroup_of_cfg(const GroupPtr& g, const std::string& spec, const Config& cfg) {
  return subgroup_of(g, spec, SubgroupOptions{cfg.search_budget});
}

std::vector<std::size_t> numbers(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& s : split_list(text, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) throw Error(Errc::MalformedInput, "not a number list: '" + text + "'");
    out.push_back(v);
  }
  return out;
}

int graph_out(const Config& cfg, const LabeledGraph& g) {
  if (cfg.format == "dot") emit(cfg, export_dot(g));
  else emit(cfg, Json::parse(export_json(g)).dump(2));
  return g.tainted ? kInconclusive : kConclusive;
}

HomPtr hom_of(const GroupPtr& source, const GroupPtr& target, const std::string& images) {
  if (images == "ladder-to-bs") return ladder_to_bs(source, target);
  if (images == "retraction") return ladder_retraction(source, target);
  return make_hom(source, target, split_list(images, ','));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"commlab: commensurators, coset graphs and witnesses in finitely presented groups"};
  app.require_subcommand(1);
  Config cfg;
  auto common = [&](CLI::App* sub, bool needs_subgroup) {
    sub->add_option("--group", cfg.group, "group spec, e.g. bs:1,2")->required();
    auto* s = sub->add_option("--subgroup", cfg.subgroup, "subgroup spec, e.g. cyclic-span:x");
    if (needs_subgroup) s->required();
    sub->add_option("--format", cfg.format, "json, dot or text")
        ->check(CLI::IsMember({"json", "dot", "text"}));
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--search-budget", cfg.search_budget,
                    "enumeration budget for bounded-search subgroups")
        ->check(CLI::PositiveNumber);
  };

  std::function<int()> run;

  // nf
  std::string word;
  auto* nf = app.add_subcommand("nf", "normal form of a word");
  common(nf, false);
  nf->add_option("--word", word, "word, e.g. \"t^-1 x^2 t\"")->required();
  nf->callback([&] {
    run = [&] {
      const GroupPtr g = group_of(cfg);
      const Word w = g->normal_form(g->parse(word));
      // plain text unless json is asked for
      if (cfg.format == "json" && nf->count("--format")) emit(cfg, Json{{"group", g->spec()}, {"word", word}, {"normalForm", g->format(w)}});
      else emit(cfg, g->format(w));
      return kConclusive;
    };
  });

  // graphs
  std::size_t radius = 2, budget = 3;
  auto* ball = app.add_subcommand("ball", "Cayley graph ball");
  common(ball, false);
  ball->add_option("--radius", radius)->required();
  ball->callback([&] { run = [&] { return graph_out(cfg, cayley_ball(group_of(cfg), radius)); }; });

  auto* coset = app.add_subcommand("coset-graph", "left coset graph ball");
  common(coset, true);
  coset->add_option("--radius", radius)->required();
  coset->add_option("--budget", budget, "exploration radius when no exact neighbour rule exists");
  coset->callback([&] {
    run = [&] {
      const GroupPtr g = group_of(cfg);
      return graph_out(cfg, coset_graph_ball(subgroup_of_cfg(g, cfg.subgroup, cfg), radius, budget));
    };
  });

  auto* quot = app.add_subcommand("quotient-graph", "right coset (quotient) graph ball");
  common(quot, true);
  quot->add_option("--radius", radius)->required();
  quot->callback([&] {
    run = [&] {
      const GroupPtr g = group_of(cfg);
      return graph_out(cfg, quotient_graph_ball(subgroup_of_cfg(g, cfg.subgroup, cfg), radius));
    };
  });

  // hausdorff
  std::string gword;
  std::size_t rmax = 6, cap = 12;
  auto* haus = app.add_subcommand("hausdorff", "Hausdorff distance profile of H and gH");
  common(haus, true);
  haus->add_option("--g", gword)->required();
  haus->add_option("--rmax", rmax);
  haus->add_option("--R", cap, "distance cap");
  haus->callback([&] {
    run = [&] {
      const GroupPtr g = group_of(cfg);
      ProfileOptions po;
      po.r_max = rmax;
      po.cap = cap;
      po.workers = cfg.workers;
      const HausdorffProfile p = hausdorff_profile(subgroup_of_cfg(g, cfg.subgroup, cfg), g->parse(gword), po);
      emit(cfg, to_json(*g, p));
      return p.verdict == ProfileVerdict::Inconclusive ? kInconclusive : kConclusive;
    };
  });

  // witness family
  SearchOptions so;
  std::size_t verify_radius = 8;
  std::string k_word, second, reps = "1", direction = "sub", to_group, images, g1_word;
  auto* wit = app.add_subcommand("witness", "finite witnesses for g commensurating H");
  wit->require_subcommand(1);
  auto witness_common = [&](CLI::App* sub) {
    common(sub, true);
    sub->add_option("--g", gword)->required();
    sub->add_option("--h-radius", so.h_radius, "H-ball radius for the search");
    sub->add_option("--search-radius", so.search_radius);
    sub->add_option("--max-set", so.max_set_size);
    sub->add_option("--radius", verify_radius, "verification radius");
  };
  // Output: the witness, its verification, exit 2 if verification failed.
  auto finish = [&](Witness& w) {
    const VerifyReport v = witness_verify(w, verify_radius);
    Json j = to_json(w, std::min<std::size_t>(verify_radius, 4));
    j["verification"] = to_json(*w.subgroup->ambient(), v);
    emit(cfg, j);
    return v.passed ? kConclusive : kInconclusive;
  };
  auto searched = [&](const GroupPtr& g, const SubgroupPtr& h, const Word& g0) -> std::optional<Witness> {
    auto w = witness_search(h, g0, so);
    if (!w) {
      emit(cfg, Json{{"group", g->spec()}, {"subgroup", h->spec()}, {"g", g->format(g->normal_form(g0))},
                     {"found", false}});
    }
    return w;
  };
  auto* ws = wit->add_subcommand("search", "greedy shortlex witness search");
  witness_common(ws);
  ws->callback([&] {
    run = [&] {
      const GroupPtr g = group_of(cfg);
      auto w = searched(g, subgroup_of_cfg(g, cfg.subgroup, cfg), g->parse(gword));
      if (!w) return kInconclusive;
      Json j = to_json(*w, std::min<std::size_t>(so.h_radius, 4));
      j["found"] = true;
      emit(cfg, j);
      return kConclusive;
    };
  });
  auto* wv = wit->add_subcommand("verify", "search, then verify on a larger ball");
  witness_common(wv);
  wv->callback([&] {
    run = [&] {
      const GroupPtr g = group_of(cfg);
      auto w = searched(g, subgroup_of_cfg(g, cfg.subgroup, cfg), g->parse(gword));
      return w ? finish(*w) : kInconclusive;
    };
  });
  auto* wi = wit->add_subcommand("invert", "witness for g^-1");
  witness_common(wi);
  wi->callback([&] {
    run = [&] {
      const GroupPtr g = group_of(cfg);
      auto w = searched(g, subgroup_of_cfg(g, cfg.subgroup, cfg), g->parse(gword));
      if (!w) return kInconclusive;
      Witness inv = witness_invert(*w);
      return finish(inv);
    };
  });
  auto* wt = wit->add_subcommand("transport", "witness for k in A or B^-1");
  witness_common(wt);
  wt->add_option("--k", k_word)->required();
  wt->callback([&] {
    run = [&] {
      const GroupPtr g = group_of(cfg);
      auto w = searched(g, subgroup_of_cfg(g, cfg.subgroup, cfg), g->parse(gword));
      if (!w) return kInconclusive;
      Witness out = witness_transport(*w, g->parse(k_word));
      return finish(out);
    };
  });
  auto* wx = wit->add_subcommand("intersect", "witness over the intersection of two subgroups");
  witness_common(wx);
  wx->add_option("--subgroup2", second)->required();
  wx->callback([&] {
    run = [&] {
      const GroupPtr g = group_of(cfg);
      const SubgroupPtr a = subgroup_of_cfg(g, cfg.subgroup, cfg);
      const SubgroupPtr b = subgroup_of_cfg(g, second, cfg);
      auto wa = searched(g, a, g->parse(gword));
      if (!wa) return kInconclusive;
      auto wb = searched(g, b, g->parse(gword));
      if (!wb) return kInconclusive;
      Witness out = witness_intersect(*wa, *wb, intersect_subgroups(a, b), verify_radius);
      return finish(out);
    };
  });
  auto* wf = wit->add_subcommand("findex", "witness for a finite-index sub- or supergroup");
  witness_common(wf);
  wf->add_option("--target", second, "subgroup spec of the new subgroup")->required();
  wf->add_option("--reps", reps, "right coset representatives, comma separated");
  wf->add_option("--direction", direction)->check(CLI::IsMember({"sub", "super"}));
  wf->callback([&] {
    run = [&] {
      const GroupPtr g = group_of(cfg);
      auto w = searched(g, subgroup_of_cfg(g, cfg.subgroup, cfg), g->parse(gword));
      if (!w) return kInconclusive;
      std::vector<Word> rs;
      for (const auto& r : split_list(reps, ',')) rs.push_back(g->parse(r));
      Witness out = witness_finite_index(*w, subgroup_of_cfg(g, second, cfg), rs,
                                         direction == "sub" ? IndexDirection::Sub : IndexDirection::Super,
                                         verify_radius);
      return finish(out);
    };
  });
  auto* wp = wit->add_subcommand("push", "push a witness through a homomorphism");
  witness_common(wp);
  wp->add_option("--to", to_group, "target group spec")->required();
  wp->add_option("--images", images, "generator images, or ladder-to-bs / retraction")->required();
  wp->add_option("--image", second, "subgroup spec of the image in the target")->required();
  wp->callback([&] {
    run = [&] {
      const GroupPtr g = group_of(cfg);
      const GroupPtr target = build_group(to_group);
      const HomPtr f = hom_of(g, target, images);
      auto w = searched(g, subgroup_of_cfg(g, cfg.subgroup, cfg), g->parse(gword));
      if (!w) return kInconclusive;
      Witness out = witness_pushforward(f, *w, subgroup_of_cfg(target, second, cfg));
      return finish(out);
    };
  });
  auto* wl = wit->add_subcommand("pull", "pull a witness back along a homomorphism");
  witness_common(wl);
  wl->add_option("--to", to_group, "target group spec; --subgroup lives there")->required();
  wl->add_option("--images", images, "generator images, or ladder-to-bs / retraction")->required();
  wl->callback([&] {
    run = [&] {
      // --group is the source; --g is the source element; the witness is
      // searched in the target for f(g).
      const GroupPtr g = group_of(cfg);
      const GroupPtr target = build_group(to_group);
      const HomPtr f = hom_of(g, target, images);
      const SubgroupPtr q = subgroup_of_cfg(target, cfg.subgroup, cfg);
      const Word g1 = g->parse(gword);
      auto w = searched(target, q, f->apply(g1));
      if (!w) return kInconclusive;
      Witness out = witness_pullback(f, *w, g1, preimage_subgroup(f, q));
      return finish(out);
    };
  });

  // ends
  std::string kind = "coset", removed = "1,2,3";
  std::size_t probe = 8;
  auto* ends = app.add_subcommand("ends", "ends estimate from a graph ball");
  common(ends, false);
  ends->add_option("--graph", kind)->check(CLI::IsMember({"cayley", "coset", "quotient"}));
  ends->add_option("--removed", removed, "removed radii, comma separated");
  ends->add_option("--probe", probe, "probe radius");
  ends->add_option("--budget", budget);
  ends->callback([&] {
    run = [&] {
      const GroupPtr g = group_of(cfg);
      if (kind != "cayley" && cfg.subgroup.empty()) throw CLI::ValidationError("--subgroup", "required for this graph");
      const LabeledGraph lg = kind == "cayley"   ? cayley_ball(g, probe)
                              : kind == "coset" ? coset_graph_ball(subgroup_of_cfg(g, cfg.subgroup, cfg), probe, budget)
                                                : quotient_graph_ball(subgroup_of_cfg(g, cfg.subgroup, cfg), probe);
      const EndsReport e = ends_estimate(lg, numbers(removed));
      emit(cfg, to_json(e));
      return e.classification == EndsClass::Inconclusive ? kInconclusive : kConclusive;
    };
  });

  // lemma18 / defect
  Lemma18Options lo;
  bool no_pairs = false;
  auto* l18 = app.add_subcommand("lemma18", "the four coset-distance inequalities over a ball");
  common(l18, true);
  l18->add_option("--b-radius", lo.b_radius);
  l18->add_option("--q-radius", lo.q_radius);
  l18->add_option("--R", lo.cap, "distance cap");
  l18->add_flag("--no-pairs", no_pairs);
  l18->add_flag("--all-samples", lo.keep_passing, "record passing samples too");
  l18->callback([&] {
    run = [&] {
      const GroupPtr g = group_of(cfg);
      lo.pairs = !no_pairs;
      lo.workers = cfg.workers;
      const Lemma18Report r = lemma18_check(subgroup_of_cfg(g, cfg.subgroup, cfg), lo);
      emit(cfg, to_json(*g, r));
      return r.tainted ? kInconclusive : kConclusive;
    };
  });
  std::string a_word, b_word;
  auto* def = app.add_subcommand("defect", "quasi-homomorphism defect of a pair");
  common(def, true);
  def->add_option("--a", a_word)->required();
  def->add_option("--b", b_word)->required();
  def->add_option("--q-radius", lo.q_radius);
  def->add_option("--R", lo.cap, "distance cap");
  def->callback([&] {
    run = [&] {
      const GroupPtr g = group_of(cfg);
      const SubgroupPtr q = subgroup_of_cfg(g, cfg.subgroup, cfg);
      lo.workers = cfg.workers;
      const std::size_t k = lemma18_constant(q, lo);
      const DefectResult d = quasi_hom_defect(q, g->parse(a_word), g->parse(b_word), k, lo.q_radius, lo.cap);
      Json j = to_json(d);
      j["k"] = k;
      emit(cfg, j);
      return d.exceeded ? kInconclusive : kConclusive;
    };
  });

  // packing
  std::size_t dist = 1;
  std::string radii = "2,3,4,5";
  auto* pack = app.add_subcommand("packing", "cosets within distance D of H");
  common(pack, true);
  pack->add_option("--D", dist);
  pack->add_option("--radii", radii);
  pack->callback([&] {
    run = [&] {
      const GroupPtr g = group_of(cfg);
      const PackingCensus c = packing_census(subgroup_of_cfg(g, cfg.subgroup, cfg), dist, numbers(radii));
      emit(cfg, to_json(c));
      return c.tainted ? kInconclusive : kConclusive;
    };
  });

  // worked examples
  int example = 1;
  auto* paper = app.add_subcommand("paper-example", "scripted checks for the worked examples");
  paper->add_option("--n", example)->required()->check(CLI::Range(1, 4));
  paper->add_option("--out", cfg.out);
  paper->add_option("--workers", cfg.workers)->check(CLI::PositiveNumber);
  paper->callback([&] {
    run = [&] {
      ExampleResult r = run_example(example, {cfg.workers});
      emit(cfg, r.bundle);
      return r.pass && r.conclusive ? kConclusive : kInconclusive;
    };
  });

  // export
  std::string in_path;
  auto* exp = app.add_subcommand("export", "convert a JSON graph to DOT or canonical JSON");
  exp->add_option("--in", in_path)->required()->check(CLI::ExistingFile);
  exp->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "dot"}));
  exp->add_option("--out", cfg.out);
  exp->callback([&] {
    run = [&] {
      std::ifstream f(in_path);
      std::stringstream ss;
      ss << f.rdbuf();
      return graph_out(cfg, parse_graph_json(ss.str()));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return run();
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::MembershipUnknown:
      case Errc::BudgetExceeded:
      case Errc::AuxiliarySearchFailed:
      case Errc::LiftSearchFailed:
      case Errc::ProfileNotStabilized:
        return kInconclusive;
      default:
        return kUsage;
    }
  }
}
