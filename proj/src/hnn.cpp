#include "commlab/hnn.hpp"

#include "commlab/error.hpp"

namespace commlab {

namespace {

Alphabet hnn_alphabet(const HnnSpec& h) {
  std::vector<std::string> names = h.base->alphabet().names();
  names.push_back(h.stable_name);
  return Alphabet(std::move(names));
}

}  // namespace

HnnGroup::HnnGroup(std::string spec, HnnSpec hnn)
    : Group(std::move(spec), hnn_alphabet(hnn)), h_(std::move(hnn)) {
  if (!h_.in_domain || !h_.in_image || !h_.transfer || !h_.inverse_transfer || !h_.split) {
    throw Error(Errc::InvalidSpec, "incomplete HNN data");
  }
}

BrittonForm HnnGroup::reduce(std::span<const Letter> w) const {
  const std::uint32_t t = stable_index();
  BrittonForm f;
  f.parts.emplace_back();
  for (Letter l : w) {
    if (l.index > t) throw Error(Errc::UnknownGenerator, "letter index out of range");
    if (l.index < t) {
      const Letter one[1] = {l};
      f.parts.back() = h_.base->multiply(f.parts.back(), one);
      continue;
    }
    const int e = l.sign;
    if (!f.signs.empty() && f.signs.back() == -e) {
      const Word& p = f.parts.back();
      std::optional<Word> moved;
      if (e == 1 && h_.in_domain(p)) moved = h_.transfer(p);            // t^-1 a t
      else if (e == -1 && h_.in_image(p)) moved = h_.inverse_transfer(p);  // t b t^-1
      if (moved) {
        f.parts.pop_back();
        f.signs.pop_back();
        f.parts.back() = h_.base->multiply(f.parts.back(), *moved);
        continue;
      }
    }
    f.signs.push_back(e);
    f.parts.emplace_back();
  }
  return f;
}

Word HnnGroup::assemble(const BrittonForm& f) const {
  Word out;
  const Letter t{stable_index(), 1};
  for (std::size_t i = 0; i < f.parts.size(); ++i) {
    if (i > 0) out.push_back(f.signs[i - 1] > 0 ? t : t.inverse());
    out.insert(out.end(), f.parts[i].begin(), f.parts[i].end());
  }
  return out;
}

Word HnnGroup::britton_reduce(std::span<const Letter> w) const { return assemble(reduce(w)); }

bool HnnGroup::has_pinch(std::span<const Letter> w) const {
  const std::uint32_t t = stable_index();
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i].index == t) pos.push_back(i);
  for (std::size_t j = 0; j + 1 < pos.size(); ++j) {
    const Letter a = w[pos[j]], b = w[pos[j + 1]];
    if (a.sign == b.sign) continue;
    const Word mid = h_.base->normal_form(w.subspan(pos[j] + 1, pos[j + 1] - pos[j] - 1));
    if (a.sign < 0 ? h_.in_domain(mid) : h_.in_image(mid)) return true;
  }
  return false;
}

std::size_t HnnGroup::t_length(std::span<const Letter> w) const { return reduce(w).signs.size(); }

Word HnnGroup::normal_form(std::span<const Letter> w) const {
  BrittonForm f = reduce(w);
  // Push associated-subgroup factors leftwards: t^-1 a = phi(a) t^-1 and
  // t b = phi^-1(b) t.
  for (std::size_t i = f.signs.size(); i > 0; --i) {
    const int e = f.signs[i - 1];
    auto [c, r] = h_.split(f.parts[i], e < 0 ? Side::Domain : Side::Image);
    if (c.empty()) continue;
    f.parts[i] = std::move(r);
    const Word moved = e < 0 ? h_.transfer(c) : h_.inverse_transfer(c);
    f.parts[i - 1] = h_.base->multiply(f.parts[i - 1], moved);
  }
  return assemble(f);
}

std::vector<Word> HnnGroup::relators() const {
  std::vector<Word> out = h_.base->relators();
  const Letter t{stable_index(), 1};
  for (const auto& a : h_.domain_generators) {
    Word r{t.inverse()};
    r.insert(r.end(), a.begin(), a.end());
    r.push_back(t);
    const Word img = inverse(h_.transfer(h_.base->normal_form(a)));
    r.insert(r.end(), img.begin(), img.end());
    out.push_back(std::move(r));
  }
  return out;
}

std::string HnnGroup::base_coset_key(const Word& g, const Subgroup& k) const {
  BrittonForm f = reduce(g);
  // Opposite direction: a t = t phi(a), b t^-1 = t^-1 phi^-1(b).
  for (std::size_t i = 0; i < f.signs.size(); ++i) {
    const int e = f.signs[i];
    auto [c, r] = h_.split(f.parts[i], e > 0 ? Side::Domain : Side::Image);
    if (c.empty()) continue;
    f.parts[i] = std::move(r);
    const Word moved = e > 0 ? h_.transfer(c) : h_.inverse_transfer(c);
    f.parts[i + 1] = h_.base->multiply(moved, f.parts[i + 1]);
  }
  const Word tail = std::move(f.parts.back());
  f.parts.back().clear();
  std::string key = encode(assemble(f));
  key += '|';
  key += *k.left_key(tail);
  return key;
}

SubgroupPtr hnn_base_subgroup(const std::shared_ptr<const HnnGroup>& g, const SubgroupPtr& k,
                              std::string spec,
                              std::optional<std::vector<Word>> neighbor_sample) {
  if (k->ambient() != g->base()) {
    throw Error(Errc::InvalidSpec, "subgroup does not live in the HNN base");
  }
  if (!k->has_keys()) {
    throw Error(Errc::InvalidSpec, "base subgroup needs exact coset keys");
  }
  Subgroup::Parts p;
  p.ambient = g;
  p.spec = std::move(spec);
  p.kind = k->kind();
  p.generators = k->generators();
  p.left_key = [g, k](const Word& w) { return g->base_coset_key(w, *k); };
  p.neighbor_sample = std::move(neighbor_sample);
  return std::make_shared<Subgroup>(std::move(p));
}

}  // namespace commlab
