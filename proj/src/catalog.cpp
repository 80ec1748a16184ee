#include "commlab/catalog.hpp"

#include <charconv>

#include "commlab/error.hpp"

namespace commlab {

namespace {

long parse_long(std::string_view text, std::string_view what) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(Errc::InvalidSpec, std::string(what) + ": expected an integer, got '" +
                                       std::string(text) + "'");
  }
  return v;
}

std::size_t parse_positive(std::string_view text, std::string_view what) {
  const long v = parse_long(text, what);
  if (v <= 0) throw Error(Errc::InvalidSpec, std::string(what) + " must be positive");
  return static_cast<std::size_t>(v);
}

// HNN of an abelian base with A, B given by generator rows and phi(D_i) = I_i.
std::shared_ptr<const HnnGroup> make_abelian_hnn(const std::shared_ptr<const AbelianGroup>& base,
                                                 const IntMatrix& domain, const IntMatrix& image,
                                                 std::string spec) {
  const IntMatrix& rel = base->relations();
  auto dom = std::make_shared<HermiteLattice>(IntMatrix::stack(rel, domain), base->column_order());
  auto img = std::make_shared<HermiteLattice>(IntMatrix::stack(rel, image), base->column_order());
  const IntMatrix dom_sys = IntMatrix::stack(domain, rel);
  const IntMatrix img_sys = IntMatrix::stack(image, rel);
  const std::size_t gens = domain.rows();

  auto apply = [base, gens](const IntMatrix& sys, const IntMatrix& to, const Word& w) {
    const auto c = solve_left(sys, base->exponents(w));
    if (!c) throw Error(Errc::PreconditionViolation, "element outside associated subgroup");
    IntVector out(base->rank(), BigInt(0));
    for (std::size_t i = 0; i < gens; ++i)
      for (std::size_t j = 0; j < base->rank(); ++j) out[j] += (*c)[i] * to(i, j);
    return base->word_of(base->reduce(out));
  };

  HnnSpec h;
  h.base = base;
  for (std::size_t i = 0; i < gens; ++i) h.domain_generators.push_back(base->word_of(domain.row(i)));
  h.in_domain = [base, dom](const Word& w) { return dom->contains(base->exponents(w)); };
  h.in_image = [base, img](const Word& w) { return img->contains(base->exponents(w)); };
  h.transfer = [apply, dom_sys, image](const Word& w) { return apply(dom_sys, image, w); };
  h.inverse_transfer = [apply, img_sys, domain](const Word& w) {
    return apply(img_sys, domain, w);
  };
  h.split = [base, dom, img](const Word& w, Side side) {
    const IntVector v = base->exponents(w);
    const IntVector r = (side == Side::Domain ? dom : img)->reduce(v);
    IntVector c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i] - r[i];
    return std::pair{base->word_of(base->reduce(c)), base->word_of(base->reduce(r))};
  };
  return std::make_shared<HnnGroup>(std::move(spec), std::move(h));
}

}  // namespace

std::shared_ptr<const HnnGroup> make_ex3() {
  auto base = std::make_shared<const Ex3Base>();
  using N = Ex3Base::Normal;
  auto z = [base](const mpz_class& a) { return base->word_of(N{a, {}}); };
  HnnSpec h;
  h.base = base;
  h.domain_generators = {generator_power(0, 2)};
  h.in_domain = [base](const Word& w) { return base->element(w).alternating.empty(); };
  h.in_image = [base](const Word& w) {
    const N e = base->element(w);
    return e.alternating.empty() && mpz_even_p(e.z_power.get_mpz_t());
  };
  h.transfer = [base, z](const Word& w) { return z(2 * base->element(w).z_power); };
  h.inverse_transfer = [base, z](const Word& w) {
    return z(mpz_class(base->element(w).z_power / 2));
  };
  h.split = [base, z](const Word& w, Side side) {
    N e = base->element(w);
    mpz_class c = e.z_power;
    if (side == Side::Image) {
      mpz_class r;
      mpz_fdiv_r_ui(r.get_mpz_t(), e.z_power.get_mpz_t(), 2);
      c = e.z_power - r;
    }
    e.z_power -= c;
    return std::pair{z(c), base->word_of(e)};
  };
  return std::make_shared<HnnGroup>("ex3", std::move(h));
}

std::shared_ptr<const HnnGroup> make_bs_hnn(long m, long n) {
  if (m == 0 || n == 0) throw Error(Errc::InvalidSpec, "BS(m,n) needs nonzero m and n");
  IntMatrix d(1, 1), i(1, 1);
  d(0, 0) = m;
  i(0, 0) = n;
  return make_abelian_hnn(make_free_abelian(1), d, i,
                          "bs:" + std::to_string(m) + "," + std::to_string(n));
}

std::shared_ptr<const HnnGroup> make_ex2hnn(std::size_t n) {
  auto base = make_ladder(n);
  IntMatrix d(1, n + 1), i(1, n + 1);
  d(0, 0) = 1;
  i(0, 0) = 2;
  return make_abelian_hnn(base, d, i, "ex2hnn:" + std::to_string(n));
}

std::shared_ptr<const HnnGroup> make_ascending_hnn(const std::shared_ptr<const AbelianGroup>& base,
                                                   const IntMatrix& images, std::string spec) {
  if (base->relations().rows() != 0) {
    throw Error(Errc::InvalidSpec, "ascending HNN needs a free abelian base");
  }
  if (images.rows() != base->rank() || images.cols() != base->rank()) {
    throw Error(Errc::InvalidSpec, "need one image per base generator");
  }
  if (determinant(images) == 0) {
    throw Error(Errc::InvalidSpec, "endomorphism is not injective");
  }
  return make_abelian_hnn(base, IntMatrix::identity(base->rank()), images, std::move(spec));
}

GroupPtr build_group(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? "" : spec.substr(colon + 1);

  if (kind == "free") return make_free(parse_positive(arg, "free rank"));
  if (kind == "abelian") return make_free_abelian(parse_positive(arg, "abelian rank"));
  if (kind == "cyclic") return make_cyclic(parse_positive(arg, "cyclic order"));
  if (kind == "hladder") return make_ladder(parse_positive(arg, "hladder n"));
  if (kind == "ex2hnn") return make_ex2hnn(parse_positive(arg, "ex2hnn n"));
  if (kind == "ex3") {
    if (!arg.empty()) throw Error(Errc::InvalidSpec, "ex3 takes no parameters");
    return make_ex3();
  }
  if (kind == "bs") {
    const auto parts = split_list(arg, ',');
    if (parts.size() != 2) throw Error(Errc::InvalidSpec, "bs needs 'm,n'");
    const long m = parse_long(parts[0], "bs m");
    const long n = parse_long(parts[1], "bs n");
    if (m == 0 || n == 0) throw Error(Errc::InvalidSpec, "BS(m,n) needs nonzero m and n");
    if (m == 1 && n >= 2) {
      return std::make_shared<BS1nGroup>("bs:1," + std::to_string(n), n);
    }
    return make_bs_hnn(m, n);
  }
  if (kind == "asc-hnn") {
    const auto last = arg.rfind(':');
    if (last == std::string_view::npos) {
      throw Error(Errc::InvalidSpec, "asc-hnn needs '<base>:<images>'");
    }
    auto base = std::dynamic_pointer_cast<const AbelianGroup>(build_group(arg.substr(0, last)));
    if (!base) throw Error(Errc::InvalidSpec, "asc-hnn base must be abelian:m");
    const auto words = split_list(arg.substr(last + 1), ',');
    if (words.size() != base->rank()) {
      throw Error(Errc::InvalidSpec, "asc-hnn needs one image per base generator");
    }
    std::vector<IntVector> rows;
    for (const auto& w : words) rows.push_back(base->exponents(base->parse(w)));
    return make_ascending_hnn(base, IntMatrix::from_rows(rows, base->rank()), std::string(spec));
  }
  if (kind == "fsub") {
    if (arg.empty()) throw Error(Errc::InvalidSpec, "fsub needs a coset-table path");
    auto table = std::make_shared<const CosetTable>(CosetTable::load(std::string(arg)));
    return std::make_shared<FreeFIndexGroup>(std::string(spec), std::move(table));
  }
  throw Error(Errc::InvalidSpec, "unknown group kind '" + std::string(kind) + "'");
}

namespace {

bool base_only(const HnnGroup& g, const Word& w) {
  for (Letter l : w)
    if (l.index == g.stable_index()) return false;
  return true;
}

SubgroupPtr downgrade(const GroupPtr& g, std::vector<Word> gens, const SubgroupOptions& opts,
                      std::string spec, const std::string& why) {
  auto p = bounded_search_subgroup(g, std::move(gens), opts.search_budget, spec);
  if (p->kind() != SubgroupKind::BoundedSearch) return p;
  Subgroup::Parts parts{p->ambient(), p->spec(), p->kind(), p->generators(), {},
                        [p](const Word& w) { return p->contains(w); }, std::nullopt,
                        "NoExactRule: " + why};
  return std::make_shared<Subgroup>(std::move(parts));
}

SubgroupPtr hnn_cyclic(const std::shared_ptr<const HnnGroup>& g, const Word& w,
                       const SubgroupOptions& opts, const std::string& spec) {
  if (!base_only(*g, w)) {
    return downgrade(g, {w}, opts, spec, "cyclic subgroup not inside the base");
  }
  if (auto ab = std::dynamic_pointer_cast<const AbelianGroup>(g->base())) {
    return hnn_base_subgroup(g, abelian_span(ab, {w}, spec), spec);
  }
  if (auto ex3 = std::dynamic_pointer_cast<const Ex3Base>(g->base())) {
    const auto e = ex3->element(w);
    if (e.alternating.size() > 1) {
      return downgrade(g, {w}, opts, spec, "no discrete-log rule for this Ex3 element");
    }
    if (!e.z_power.fits_slong_p()) throw Error(Errc::InvalidSpec, "exponent too large");
    const long a = e.z_power.get_si();
    const std::uint32_t gen = e.alternating.empty() ? 0 : e.alternating.front();
    const long j = e.alternating.empty() ? 2 * a : 2 * a + 1;
    std::optional<std::vector<Word>> sample;
    if (j == 2 || j == -2) {
      // z^j t = t z^(2j); z^(2q+r) t^-1 = z^r t^-1 z^q; z central.
      sample = std::vector<Word>{Word{}, generator_power(0, 2)};
    }
    return hnn_base_subgroup(g, ex3_power_subgroup(ex3, gen, j, spec), spec, std::move(sample));
  }
  return downgrade(g, {w}, opts, spec, "no rule for this base");
}

}  // namespace

SubgroupPtr subgroup_of(const GroupPtr& g, std::string_view spec_view, const SubgroupOptions& opts) {
  const std::string spec(spec_view);
  const auto colon = spec_view.find(':');
  const std::string_view kind = spec_view.substr(0, colon);
  const std::string arg =
      colon == std::string_view::npos ? std::string() : std::string(spec_view.substr(colon + 1));

  if (kind == "whole") return whole_group(g);
  if (kind == "trivial") return trivial_subgroup(g);

  if (kind == "gens") {
    std::vector<Word> gens;
    for (const auto& w : split_list(arg, ',')) gens.push_back(g->parse(w));
    return bounded_search_subgroup(g, std::move(gens), opts.search_budget, spec);
  }

  if (kind == "cyclic-span") {
    const Word w = g->normal_form(g->parse(arg));
    if (auto f = std::dynamic_pointer_cast<const FreeGroup>(g)) return free_cyclic_span(f, w, spec);
    if (auto a = std::dynamic_pointer_cast<const AbelianGroup>(g)) return abelian_span(a, {w}, spec);
    if (auto b = std::dynamic_pointer_cast<const BS1nGroup>(g)) {
      const auto e = b->affine(w);
      if (e.k == 0 && e.d.get_den() == 1 && e.d.get_num().fits_slong_p()) {
        return bs1n_power_subgroup(b, 0, e.d.get_num().get_si(), spec);
      }
      if (e.d == 0) return bs1n_power_subgroup(b, 1, e.k, spec);
      return downgrade(g, {w}, opts, spec, "only powers of x or t have a discrete-log rule");
    }
    if (auto h = std::dynamic_pointer_cast<const HnnGroup>(g)) return hnn_cyclic(h, w, opts, spec);
    return downgrade(g, {w}, opts, spec, "no discrete-log rule registered");
  }

  if (kind == "abelian-span") {
    std::vector<Word> gens;
    for (const auto& w : split_list(arg, ',')) gens.push_back(g->parse(w));
    if (auto a = std::dynamic_pointer_cast<const AbelianGroup>(g)) {
      return abelian_span(a, std::move(gens), spec);
    }
    if (auto h = std::dynamic_pointer_cast<const HnnGroup>(g)) {
      auto ab = std::dynamic_pointer_cast<const AbelianGroup>(h->base());
      bool ok = static_cast<bool>(ab);
      for (const auto& w : gens) ok = ok && base_only(*h, w);
      if (ok) return hnn_base_subgroup(h, abelian_span(ab, std::move(gens), spec), spec);
    }
    throw Error(Errc::InvalidSpec, "abelian-span needs an abelian group or abelian HNN base");
  }

  if (kind == "base") {
    if (auto h = std::dynamic_pointer_cast<const HnnGroup>(g)) {
      auto sub = whole_group(h->base());
      return hnn_base_subgroup(h, sub, spec);
    }
    if (auto b = std::dynamic_pointer_cast<const BS1nGroup>(g)) {
      return bs1n_power_subgroup(b, 0, 1, spec);
    }
    if (auto f = std::dynamic_pointer_cast<const FreeFIndexGroup>(g)) {
      return coset_table_subgroup(f, f->table(), spec);
    }
    throw Error(Errc::InvalidSpec, "'base' needs an HNN, BS(1,n) or fsub group");
  }

  if (kind == "coset-table") {
    auto f = std::dynamic_pointer_cast<const FreeGroup>(g);
    if (!f) throw Error(Errc::InvalidSpec, "coset tables describe subgroups of free groups");
    if (arg.empty()) {
      if (auto fi = std::dynamic_pointer_cast<const FreeFIndexGroup>(g)) {
        return coset_table_subgroup(f, fi->table(), spec);
      }
      throw Error(Errc::InvalidSpec, "coset-table needs a path");
    }
    return coset_table_subgroup(f, std::make_shared<const CosetTable>(CosetTable::load(arg)), spec);
  }

  throw Error(Errc::InvalidSpec, "unknown subgroup kind '" + std::string(kind) + "'");
}

}  // namespace commlab
