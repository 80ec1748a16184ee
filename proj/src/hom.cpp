#include "commlab/hom.hpp"

#include "commlab/error.hpp"

namespace commlab {

Hom::Hom(GroupPtr source, GroupPtr target, std::vector<Word> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_->rank()) {
    throw Error(Errc::InvalidHomomorphism, "need one image per source generator");
  }
  for (auto& w : images_) {
    for (Letter l : w)
      if (l.index >= target_->rank()) throw Error(Errc::InvalidHomomorphism, "bad image letter");
    w = target_->normal_form(w);
  }
  for (const auto& r : source_->relators()) {
    if (!apply(r).empty()) {
      throw Error(Errc::InvalidHomomorphism,
                  "relator " + source_->format(r) + " maps to " + target_->format(apply(r)));
    }
  }
}

Word Hom::apply(std::span<const Letter> w) const {
  Word out;
  for (Letter l : w) {
    if (l.index >= images_.size()) throw Error(Errc::UnknownGenerator, "letter out of range");
    const Word& img = images_[l.index];
    if (l.sign > 0) out.insert(out.end(), img.begin(), img.end());
    else {
      const Word inv = inverse(img);
      out.insert(out.end(), inv.begin(), inv.end());
    }
  }
  return target_->normal_form(out);
}

HomPtr make_hom(GroupPtr source, GroupPtr target, const std::vector<std::string>& images) {
  std::vector<Word> words;
  for (const auto& s : images) words.push_back(target->parse(s));
  return std::make_shared<Hom>(std::move(source), std::move(target), std::move(words));
}

HomPtr identity_hom(const GroupPtr& g) {
  std::vector<Word> words;
  for (std::uint32_t i = 0; i < g->rank(); ++i) words.push_back({Letter{i, 1}});
  return std::make_shared<Hom>(g, g, std::move(words));
}

HomPtr ladder_to_bs(const GroupPtr& ex2hnn, const GroupPtr& bs12) {
  const std::size_t n = ex2hnn->rank() - 2;  // x0..xn, t
  std::vector<Word> images;
  images.push_back(generator_power(0, 1));
  for (std::size_t k = 1; k <= n; ++k) images.push_back(generator_power(0, 1L << (k - 1)));
  images.push_back(generator_power(1, 1));
  return std::make_shared<Hom>(ex2hnn, bs12, std::move(images));
}

HomPtr ladder_retraction(const GroupPtr& hn, const GroupPtr& hm) {
  const std::size_t n = hn->rank() - 1, m = hm->rank() - 1;
  if (m > n) throw Error(Errc::InvalidHomomorphism, "retraction needs m <= n");
  std::vector<Word> images;
  for (std::uint32_t k = 0; k <= n; ++k) {
    if (k <= m) images.push_back({Letter{k, 1}});
    else images.push_back(generator_power(0, 1L << (k - 1)));
  }
  return std::make_shared<Hom>(hn, hm, std::move(images));
}

SubgroupPtr preimage_subgroup(const HomPtr& f, const SubgroupPtr& q) {
  if (q->ambient() != f->target()) {
    throw Error(Errc::PreconditionViolation, "subgroup is not in the target of the map");
  }
  Subgroup::Parts p;
  p.ambient = f->source();
  p.spec = "preimage(" + q->spec() + ")";
  p.kind = q->kind();
  if (q->has_keys()) {
    p.left_key = [f, q](const Word& w) { return *q->left_key(f->apply(w)); };
  } else {
    p.member = [f, q](const Word& w) { return q->contains(f->apply(w)); };
  }
  return std::make_shared<Subgroup>(std::move(p));
}

}  // namespace commlab
