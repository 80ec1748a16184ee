#include "commlab/witness.hpp"

#include <deque>
#include <map>
#include <memory>
#include <unordered_map>

#include "commlab/ball.hpp"
#include "commlab/error.hpp"

namespace commlab {

namespace {

bool member(const Subgroup& h, const Word& w) {
  return h.contains_exact(h.ambient()->normal_form(w));
}

bool contains_element(const std::vector<Word>& set, const Word& nf) {
  for (const auto& s : set)
    if (s == nf) return true;
  return false;
}

void add_unique(std::vector<Word>& set, Word nf) {
  if (!contains_element(set, nf)) set.push_back(std::move(nf));
}

// Shortlex-least a in the search ball with accept(a), or nullopt.
std::optional<Word> first_in(const Ball& ball, const std::function<bool(const Word&)>& accept) {
  for (const auto& e : ball.elements())
    if (accept(e.nf)) return e.nf;
  return std::nullopt;
}

}  // namespace

std::vector<Word> subgroup_ball(const SubgroupPtr& h, std::size_t radius) {
  const Ball ball(*h->ambient(), radius);
  std::vector<Word> out;
  for (const auto& e : ball.elements())
    if (h->contains_exact(e.nf)) out.push_back(e.nf);
  return out;
}

std::optional<Witness> witness_search(const SubgroupPtr& h, const Word& g, const SearchOptions& opt) {
  const GroupPtr G = h->ambient();
  struct State {
    Ball search;
    std::unordered_map<std::string, Word> alpha, beta;
  };
  auto st = std::make_shared<State>(State{Ball(*G, opt.search_radius), {}, {}});
  const Word gnf = G->normal_form(g);
  const Word ginv = G->normal_form(inverse(g));

  auto find_alpha = [G, h, st, ginv](const Word& q) {
    const Word shifted = G->multiply(ginv, q);
    return first_in(st->search, [&](const Word& a) { return member(*h, G->multiply(shifted, a)); });
  };
  auto find_beta = [G, h, st, gnf](const Word& q) {
    const Word shifted = G->multiply(gnf, q);
    return first_in(st->search, [&](const Word& b) { return member(*h, G->multiply(shifted, b)); });
  };

  Witness w;
  w.subgroup = h;
  w.g = gnf;
  for (const auto& q : subgroup_ball(h, opt.h_radius)) {
    auto a = find_alpha(q);
    auto b = find_beta(q);
    if (!a || !b) return std::nullopt;
    add_unique(w.a_set, *a);
    add_unique(w.b_set, *b);
    if (w.a_set.size() > opt.max_set_size || w.b_set.size() > opt.max_set_size) return std::nullopt;
    st->alpha.emplace(encode(q), *a);
    st->beta.emplace(encode(q), *b);
  }
  if (w.a_set.empty()) return std::nullopt;

  auto extend = [G](std::shared_ptr<State> st, bool is_alpha, std::vector<Word> set, auto rule) {
    return [G, st, is_alpha, set = std::move(set), rule](const Word& q) -> std::optional<Word> {
      const Word nf = G->normal_form(q);
      auto& memo = is_alpha ? st->alpha : st->beta;
      if (auto it = memo.find(encode(nf)); it != memo.end()) return it->second;
      auto v = rule(nf);
      if (!v || !contains_element(set, *v)) return std::nullopt;
      memo.emplace(encode(nf), *v);
      return v;
    };
  };
  w.alpha = extend(st, true, w.a_set, find_alpha);
  w.beta = extend(st, false, w.b_set, find_beta);
  w.verified_radius = opt.h_radius;
  return w;
}

VerifyReport witness_verify(Witness& w, std::size_t radius) {
  const Group& G = *w.subgroup->ambient();
  const Subgroup& H = *w.subgroup;
  const Word ginv = G.normal_form(inverse(w.g));
  VerifyReport rep;
  rep.radius = radius;
  auto fail = [&](const Word& at, std::string why) {
    rep.failing = at;
    rep.reason = std::move(why);
    return rep;
  };

  const Ball ball(G, radius);
  for (const auto& e : ball.elements()) {
    const Word& q = e.nf;
    if (!H.contains_exact(q)) continue;
    ++rep.checked;
    const auto a = w.alpha(q);
    if (!a) return fail(q, "alpha undefined");
    if (!contains_element(w.a_set, G.normal_form(*a))) return fail(q, "alpha value outside A");
    if (!member(H, concat(G.multiply(ginv, q), *a))) return fail(q, "h alpha(h) not in gH");
    const auto b = w.beta(q);
    if (!b) return fail(q, "beta undefined");
    if (!contains_element(w.b_set, G.normal_form(*b))) return fail(q, "beta value outside B");
    if (!member(H, concat(G.multiply(w.g, q), *b))) return fail(q, "g h beta(h) not in H");
  }

  std::vector<Word> cover = w.a_set;
  for (const auto& b : w.b_set) add_unique(cover, G.normal_form(inverse(b)));
  for (const auto& e : ball.elements()) {
    if (!member(H, G.multiply(ginv, e.nf))) continue;
    bool covered = false;
    for (const auto& c : cover) {
      if (member(H, concat(e.nf, inverse(c)))) {
        covered = true;
        break;
      }
    }
    if (!covered) return fail(e.nf, "element of gH not in H(A u B^-1)");
  }
  rep.passed = true;
  w.verified_radius = radius;
  return rep;
}

Witness witness_invert(const Witness& w) {
  Witness out;
  out.subgroup = w.subgroup;
  out.g = w.subgroup->ambient()->normal_form(inverse(w.g));
  out.a_set = w.b_set;
  out.b_set = w.a_set;
  out.alpha = w.beta;
  out.beta = w.alpha;
  return out;
}

Witness witness_transport(const Witness& w, const Word& k, std::size_t search_radius) {
  const GroupPtr G = w.subgroup->ambient();
  const Word knf = G->normal_form(k);
  const bool in_a = contains_element(w.a_set, knf);
  const bool in_binv = contains_element(w.b_set, G->normal_form(inverse(knf)));
  if (!in_a && !in_binv) {
    throw Error(Errc::PreconditionViolation, G->format(knf) + " is not in A or B^-1");
  }
  // k = u g v with u, v in H
  const Word ginv = G->normal_form(inverse(w.g));
  std::optional<Word> u, v;
  for (const auto& q : subgroup_ball(w.subgroup, search_radius)) {
    const Word cand = G->normal_form(concat(concat(ginv, inverse(q)), knf));
    if (w.subgroup->contains_exact(cand)) {
      u = q;
      v = cand;
      break;
    }
  }
  if (!u) {
    throw Error(Errc::AuxiliarySearchFailed,
                "no u in H with u^-1 k in gH within radius " + std::to_string(search_radius));
  }
  Witness out;
  out.subgroup = w.subgroup;
  out.g = knf;
  out.a_set = w.a_set;
  out.b_set = w.b_set;
  const Word uinv = G->normal_form(inverse(*u));
  out.alpha = [G, alpha = w.alpha, uinv](const Word& q) { return alpha(G->multiply(uinv, q)); };
  out.beta = [G, beta = w.beta, v = *v](const Word& q) { return beta(G->multiply(v, q)); };
  return out;
}

Witness witness_intersect(const Witness& wa, const Witness& wb, const SubgroupPtr& both,
                          std::size_t radius) {
  const GroupPtr G = both->ambient();
  if (!G->equal(wa.g, wb.g)) {
    throw Error(Errc::PreconditionViolation, "witnesses are for different elements");
  }
  const Word g = G->normal_form(wa.g);
  const Word ginv = G->normal_form(inverse(g));
  // first q per tau value, stored as the correction it induces
  struct Memo {
    std::map<std::string, Word> alpha, beta;
  };
  auto memo = std::make_shared<Memo>();

  Witness out;
  out.subgroup = both;
  out.g = g;
  out.alpha = [G, memo, ginv, fa = wa.alpha, fb = wb.alpha](const Word& q) -> std::optional<Word> {
    const auto a = fa(q);
    const auto b = fb(q);
    if (!a || !b) return std::nullopt;
    const std::string tau = G->key(concat(inverse(*a), *b));
    auto it = memo->alpha.find(tau);
    if (it == memo->alpha.end()) {
      it = memo->alpha.emplace(tau, G->normal_form(concat(G->multiply(ginv, q), *a))).first;
    }
    return G->normal_form(concat(*a, inverse(it->second)));
  };
  out.beta = [G, memo, g, fa = wa.beta, fb = wb.beta](const Word& q) -> std::optional<Word> {
    const auto a = fa(q);
    const auto b = fb(q);
    if (!a || !b) return std::nullopt;
    const std::string tau = G->key(concat(inverse(*a), *b));
    auto it = memo->beta.find(tau);
    if (it == memo->beta.end()) {
      it = memo->beta.emplace(tau, G->normal_form(concat(G->multiply(g, q), *a))).first;
    }
    return G->normal_form(concat(*a, inverse(it->second)));
  };
  for (const auto& q : subgroup_ball(both, radius)) {
    if (auto a = out.alpha(q)) add_unique(out.a_set, *a);
    if (auto b = out.beta(q)) add_unique(out.b_set, *b);
  }
  return out;
}

Witness witness_finite_index(const Witness& w, const SubgroupPtr& target,
                             const std::vector<Word>& reps, IndexDirection dir,
                             std::size_t radius) {
  const GroupPtr G = target->ambient();
  std::vector<Word> inv;
  for (const auto& r : reps) inv.push_back(G->normal_form(inverse(r)));
  const SubgroupPtr big = dir == IndexDirection::Sub ? w.subgroup : target;
  const SubgroupPtr small = dir == IndexDirection::Sub ? target : w.subgroup;
  for (const auto& q : subgroup_ball(big, radius)) {
    bool hit = false;
    for (const auto& ri : inv) hit = hit || member(*small, concat(q, ri));
    if (!hit) {
      throw Error(Errc::TransversalIncomplete, G->format(q) + " lies in no listed coset");
    }
  }

  Witness out;
  out.subgroup = target;
  out.g = w.g;
  if (dir == IndexDirection::Sub) {
    const Word ginv = G->normal_form(inverse(w.g));
    for (const auto& a : w.a_set)
      for (const auto& ri : inv) add_unique(out.a_set, G->normal_form(concat(a, ri)));
    for (const auto& b : w.b_set)
      for (const auto& ri : inv) add_unique(out.b_set, G->normal_form(concat(b, ri)));
    // alpha' = alpha q_i^-1 for the coset Q' q_i containing g^-1 q alpha(q)
    auto pick = [G, target, inv](const Word& lead, const Word& c) -> std::optional<Word> {
      for (const auto& ri : inv)
        if (member(*target, concat(concat(lead, c), ri))) return G->normal_form(concat(c, ri));
      return std::nullopt;
    };
    out.alpha = [G, pick, ginv, alpha = w.alpha](const Word& q) -> std::optional<Word> {
      const auto a = alpha(q);
      if (!a) return std::nullopt;
      return pick(G->multiply(ginv, q), *a);
    };
    out.beta = [G, pick, g = w.g, beta = w.beta](const Word& q) -> std::optional<Word> {
      const auto b = beta(q);
      if (!b) return std::nullopt;
      return pick(G->multiply(g, q), *b);
    };
  } else {
    for (const auto& a : w.a_set)
      for (const auto& ri : inv) add_unique(out.a_set, G->normal_form(concat(ri, a)));
    for (const auto& b : w.b_set)
      for (const auto& ri : inv) add_unique(out.b_set, G->normal_form(concat(ri, b)));
    // q' = q q_i with q in Q; alpha'(q') = q_i^-1 alpha(q)
    auto lift = [G, small, inv, reps](const Word& qp, const WitnessMap& m) -> std::optional<Word> {
      for (std::size_t i = 0; i < inv.size(); ++i) {
        const Word q = G->normal_form(concat(qp, inv[i]));
        if (!small->contains_exact(q)) continue;
        const auto v = m(q);
        if (!v) return std::nullopt;
        return G->normal_form(concat(inv[i], *v));
      }
      return std::nullopt;
    };
    out.alpha = [lift, alpha = w.alpha](const Word& q) { return lift(q, alpha); };
    out.beta = [lift, beta = w.beta](const Word& q) { return lift(q, beta); };
  }
  return out;
}

Witness witness_pushforward(const HomPtr& f, const Witness& w, const SubgroupPtr& image,
                            std::size_t lift_budget) {
  const GroupPtr G1 = f->source();
  const GroupPtr G2 = f->target();
  // breadth-first over words in the source subgroup's generators, indexed by
  // their images
  struct Lifter {
    std::vector<Word> steps;
    std::deque<Word> frontier{Word{}};
    std::unordered_map<std::string, bool> seen;
    std::unordered_map<std::string, Word> by_image;
  };
  auto lf = std::make_shared<Lifter>();
  lf->steps = symmetric_steps(*G1, w.subgroup->generators());
  lf->seen.emplace(G1->key(Word{}), true);
  lf->by_image.emplace(G2->key(Word{}), Word{});

  auto lift = [G1, G2, f, lf, lift_budget](const Word& y) -> std::optional<Word> {
    const std::string target = G2->key(y);
    while (true) {
      if (auto it = lf->by_image.find(target); it != lf->by_image.end()) return it->second;
      if (lf->frontier.empty() || lf->seen.size() >= lift_budget) return std::nullopt;
      const Word cur = lf->frontier.front();
      lf->frontier.pop_front();
      for (const auto& s : lf->steps) {
        Word next = G1->multiply(cur, s);
        if (!lf->seen.emplace(G1->key(next), true).second) continue;
        lf->by_image.emplace(G2->key(f->apply(next)), next);
        lf->frontier.push_back(std::move(next));
      }
    }
  };

  Witness out;
  out.subgroup = image;
  out.g = f->apply(w.g);
  for (const auto& a : w.a_set) add_unique(out.a_set, f->apply(a));
  for (const auto& b : w.b_set) add_unique(out.b_set, f->apply(b));
  auto through = [f, lift](const WitnessMap& m) {
    return [f, lift, m](const Word& y) -> std::optional<Word> {
      const auto q = lift(y);
      if (!q) return std::nullopt;
      const auto v = m(*q);
      if (!v) return std::nullopt;
      return f->apply(*v);
    };
  };
  out.alpha = through(w.alpha);
  out.beta = through(w.beta);
  return out;
}

Witness witness_pullback(const HomPtr& f, const Witness& w, const Word& g1,
                         const SubgroupPtr& preimage, std::size_t lift_radius) {
  const GroupPtr G1 = f->source();
  const GroupPtr G2 = f->target();
  if (!G2->equal(f->apply(g1), w.g)) {
    throw Error(Errc::PreconditionViolation, "witness is not for the image of g");
  }
  const Ball ball(*G1, lift_radius);
  auto lifts = std::make_shared<std::map<std::string, Word>>();
  auto lift_all = [&](const std::vector<Word>& set, std::vector<Word>& into) {
    for (const auto& c : set) {
      const auto e = first_in(ball, [&](const Word& x) { return G2->equal(f->apply(x), c); });
      if (!e) {
        throw Error(Errc::LiftSearchFailed,
                    "no preimage of " + G2->format(c) + " within radius " + std::to_string(lift_radius));
      }
      lifts->emplace(G2->key(c), *e);
      add_unique(into, *e);
    }
  };
  Witness out;
  out.subgroup = preimage;
  out.g = G1->normal_form(g1);
  lift_all(w.a_set, out.a_set);
  lift_all(w.b_set, out.b_set);
  auto through = [f, G2, lifts](const WitnessMap& m) {
    return [f, G2, lifts, m](const Word& p) -> std::optional<Word> {
      const auto v = m(f->apply(p));
      if (!v) return std::nullopt;
      auto it = lifts->find(G2->key(*v));
      if (it == lifts->end()) return std::nullopt;
      return it->second;
    };
  };
  out.alpha = through(w.alpha);
  out.beta = through(w.beta);
  return out;
}

}  // namespace commlab
