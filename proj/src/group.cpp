#include "commlab/group.hpp"

#include <deque>
#include <unordered_set>

#include "commlab/error.hpp"

namespace commlab {

std::vector<Letter> Group::letters() const {
  std::vector<Letter> out;
  out.reserve(2 * rank());
  for (std::uint32_t i = 0; i < rank(); ++i) {
    out.push_back({i, 1});
    out.push_back({i, -1});
  }
  return out;
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Yes: return "Yes";
    case Verdict::No: return "No";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

std::string_view to_string(SubgroupKind k) noexcept {
  switch (k) {
    case SubgroupKind::ExactCatalog: return "exact-catalog";
    case SubgroupKind::CosetTable: return "coset-table";
    case SubgroupKind::BoundedSearch: return "bounded-search";
  }
  return "?";
}

Subgroup::Subgroup(Parts parts) : p_(std::move(parts)) {
  if (!p_.ambient) throw Error(Errc::InvalidSpec, "subgroup without ambient group");
  if (p_.kind != SubgroupKind::BoundedSearch && !p_.left_key) {
    throw Error(Errc::InvalidSpec, "exact subgroup '" + p_.spec + "' needs a coset key");
  }
  if (!p_.left_key && !p_.member) {
    throw Error(Errc::InvalidSpec, "subgroup '" + p_.spec + "' has no membership oracle");
  }
  if (p_.left_key) identity_key_ = p_.left_key(Word{});
}

Membership Subgroup::contains(const Word& w) const {
  if (p_.left_key) {
    return {p_.left_key(w) == identity_key_ ? Verdict::Yes : Verdict::No, 0};
  }
  return p_.member(w);
}

bool Subgroup::contains_exact(const Word& w) const {
  const Membership m = contains(w);
  if (m.unknown()) {
    throw Error(Errc::MembershipUnknown,
                "'" + p_.spec + "' undecided within budget " + std::to_string(m.budget));
  }
  return m.yes();
}

std::optional<std::string> Subgroup::left_key(const Word& g) const {
  if (!p_.left_key) return std::nullopt;
  return p_.left_key(g);
}

std::optional<std::string> Subgroup::right_key(const Word& g) const {
  if (!p_.left_key) return std::nullopt;
  return p_.left_key(inverse(g));
}

SubgroupPtr whole_group(const GroupPtr& g) {
  Subgroup::Parts p;
  p.ambient = g;
  p.spec = "whole";
  for (std::uint32_t i = 0; i < g->rank(); ++i) p.generators.push_back({Letter{i, 1}});
  p.left_key = [](const Word&) { return std::string(); };
  p.neighbor_sample = std::vector<Word>{Word{}};
  return std::make_shared<Subgroup>(std::move(p));
}

SubgroupPtr trivial_subgroup(const GroupPtr& g) {
  Subgroup::Parts p;
  p.ambient = g;
  p.spec = "trivial";
  p.left_key = [g](const Word& w) { return g->key(w); };
  p.neighbor_sample = std::vector<Word>{Word{}};
  return std::make_shared<Subgroup>(std::move(p));
}

SubgroupPtr bounded_search_subgroup(const GroupPtr& g, std::vector<Word> gens,
                                    std::size_t budget, std::string spec) {
  // Breadth-first closure over the generators and their inverses.
  std::vector<Word> steps;
  for (const auto& w : gens) {
    steps.push_back(g->normal_form(w));
    steps.push_back(g->normal_form(inverse(w)));
  }
  auto seen = std::make_shared<std::unordered_set<std::string>>();
  std::deque<Word> queue{Word{}};
  seen->insert(g->key(Word{}));
  bool closed = true;
  while (!queue.empty()) {
    Word cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : steps) {
      Word next;
      try {
        next = g->multiply(cur, s);
      } catch (const Error& e) {
        if (e.code() != Errc::BudgetExceeded) throw;
        closed = false;
        break;
      }
      std::string k = encode(next);
      if (seen->count(k)) continue;
      if (seen->size() >= budget) {
        closed = false;
        break;
      }
      seen->insert(std::move(k));
      queue.push_back(std::move(next));
    }
    if (!closed) break;
  }

  Subgroup::Parts p;
  p.ambient = g;
  p.spec = std::move(spec);
  p.kind = SubgroupKind::BoundedSearch;
  p.generators = std::move(gens);
  p.member = [g, seen, closed, budget](const Word& w) -> Membership {
    std::string k;
    try {
      k = g->key(w);
    } catch (const Error& e) {
      if (e.code() != Errc::BudgetExceeded) throw;
      return {Verdict::Unknown, budget};
    }
    if (seen->count(k)) return {Verdict::Yes, 0};
    if (closed) return {Verdict::No, 0};
    return {Verdict::Unknown, budget};
  };
  if (closed) {
    // The whole subgroup is in hand: keys come from the smallest element of gH
    // found by right-multiplying with the enumerated set.
    auto elems = std::make_shared<std::vector<Word>>();
    std::deque<Word> q2{Word{}};
    std::unordered_set<std::string> s2{g->key(Word{})};
    while (!q2.empty()) {
      Word cur = std::move(q2.front());
      q2.pop_front();
      elems->push_back(cur);
      for (const auto& s : steps) {
        Word next = g->multiply(cur, s);
        if (s2.insert(encode(next)).second) q2.push_back(std::move(next));
      }
    }
    p.kind = SubgroupKind::ExactCatalog;
    p.left_key = [g, elems](const Word& w) {
      std::string best;
      bool first = true;
      const Word nf = g->normal_form(w);
      for (const auto& h : *elems) {
        std::string k = g->key(concat(nf, h));
        if (first || k < best) best = std::move(k);
        first = false;
      }
      return best;
    };
    p.note = "enumeration closed: subgroup is finite";
  }
  return std::make_shared<Subgroup>(std::move(p));
}

SubgroupPtr conjugate_subgroup(const SubgroupPtr& q, const Word& b) {
  const GroupPtr& g = q->ambient();
  const Word bn = g->normal_form(b);
  const Word binv = inverse(bn);
  Subgroup::Parts p;
  p.ambient = g;
  p.spec = "conj(" + g->format(bn) + "," + q->spec() + ")";
  p.kind = q->kind();
  for (const auto& w : q->generators()) p.generators.push_back(concat(concat(bn, w), binv));
  if (q->has_keys()) {
    p.left_key = [q, bn](const Word& z) { return *q->left_key(concat(z, bn)); };
  } else {
    p.member = [q, bn, binv](const Word& z) { return q->contains(concat(concat(binv, z), bn)); };
  }
  if (q->neighbor_sample()) {
    std::vector<Word> r;
    for (const auto& w : *q->neighbor_sample()) r.push_back(concat(concat(bn, w), binv));
    p.neighbor_sample = std::move(r);
  }
  return std::make_shared<Subgroup>(std::move(p));
}

SubgroupPtr intersect_subgroups(const SubgroupPtr& a, const SubgroupPtr& b) {
  if (a->ambient() != b->ambient()) {
    throw Error(Errc::PreconditionViolation, "intersection across different groups");
  }
  Subgroup::Parts p;
  p.ambient = a->ambient();
  p.spec = "meet(" + a->spec() + "," + b->spec() + ")";
  p.kind = a->exact() && b->exact()
               ? (a->kind() == SubgroupKind::CosetTable && b->kind() == SubgroupKind::CosetTable
                      ? SubgroupKind::CosetTable
                      : SubgroupKind::ExactCatalog)
               : SubgroupKind::BoundedSearch;
  if (a->has_keys() && b->has_keys()) {
    p.left_key = [a, b](const Word& z) {
      std::string ka = *a->left_key(z);
      std::string kb = *b->left_key(z);
      return std::to_string(ka.size()) + ":" + ka + kb;
    };
  } else {
    p.member = [a, b](const Word& z) -> Membership {
      const Membership ma = a->contains(z);
      if (ma.verdict == Verdict::No) return ma;
      const Membership mb = b->contains(z);
      if (mb.verdict == Verdict::No) return mb;
      if (ma.unknown()) return ma;
      return mb;
    };
    p.kind = SubgroupKind::BoundedSearch;
  }
  return std::make_shared<Subgroup>(std::move(p));
}

}  // namespace commlab
