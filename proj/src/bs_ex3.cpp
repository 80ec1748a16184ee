#include "commlab/catalog.hpp"
#include "commlab/error.hpp"

namespace commlab {

namespace {

mpz_class ipow(long base, unsigned long e) {
  mpz_class out;
  mpz_class b = base;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

// n^-k as a rational.
mpq_class inv_power(long n, long k) {
  if (k >= 0) return mpq_class(mpz_class(1), ipow(n, static_cast<unsigned long>(k)));
  return mpq_class(ipow(n, static_cast<unsigned long>(-k)));
}

long to_long(const mpz_class& v) {
  if (!v.fits_slong_p()) throw Error(Errc::BudgetExceeded, "exponent too large for a word");
  return v.get_si();
}

constexpr long kMaxRun = 1L << 20;

void append_power(Word& w, std::uint32_t gen, long count) {
  if (count > kMaxRun || count < -kMaxRun)
    throw Error(Errc::BudgetExceeded, "normal form longer than " + std::to_string(kMaxRun) + " letters");
  const Word run = generator_power(gen, count);
  w.insert(w.end(), run.begin(), run.end());
}

}  // namespace

mpq_class DyadicElement::value(long base) const {
  mpq_class v(numerator);
  if (exponent >= 0) v *= ipow(base, static_cast<unsigned long>(exponent));
  else v /= ipow(base, static_cast<unsigned long>(-exponent));
  v.canonicalize();
  return v;
}

BS1nGroup::BS1nGroup(std::string spec, long n)
    : Group(std::move(spec), Alphabet({"x", "t"})), n_(n) {
  if (n < 2) throw Error(Errc::InvalidSpec, "affine model needs n >= 2");
}

BS1nGroup::Affine BS1nGroup::affine(std::span<const Letter> w) const {
  Affine a;
  for (Letter l : w) {
    if (l.index == 0) {
      a.d += l.sign * inv_power(n_, a.k);
    } else if (l.index == 1) {
      a.k += l.sign;
    } else {
      throw Error(Errc::UnknownGenerator, "letter index out of range");
    }
  }
  a.d.canonicalize();
  return a;
}

DyadicElement BS1nGroup::from_affine(const Affine& a) const {
  DyadicElement e;
  e.level = a.k;
  if (a.d == 0) return e;
  mpq_class x = a.d;
  long exp = 0;
  while (x.get_den() != 1) {
    x *= n_;
    x.canonicalize();
    --exp;
  }
  mpz_class num = x.get_num();
  while (num % n_ == 0) {
    num /= n_;
    ++exp;
  }
  e.numerator = num;
  e.exponent = exp;
  return e;
}

DyadicElement BS1nGroup::element(std::span<const Letter> w) const { return from_affine(affine(w)); }

Word BS1nGroup::word_of(const Affine& a) const {
  // t^s x^c t^(k-s) with s >= 0 minimal.
  long s = 0;
  mpq_class c = a.d;
  while (c.get_den() != 1) {
    c *= n_;
    c.canonicalize();
    ++s;
  }
  Word out;
  append_power(out, 1, s);
  append_power(out, 0, to_long(c.get_num()));
  append_power(out, 1, a.k - s);
  return free_reduce(out);
}

Word BS1nGroup::word_of(const DyadicElement& e) const {
  return word_of(Affine{e.value(n_), e.level});
}

Word BS1nGroup::normal_form(std::span<const Letter> w) const { return word_of(affine(w)); }

std::vector<Word> BS1nGroup::relators() const {
  Word r{{1, -1}, {0, 1}, {1, 1}};
  append_power(r, 0, -n_);
  return {r};
}

SubgroupPtr bs1n_power_subgroup(const std::shared_ptr<const BS1nGroup>& g, std::uint32_t gen,
                                long a, std::string spec) {
  if (a == 0) return trivial_subgroup(g);
  if (gen > 1) throw Error(Errc::InvalidSpec, "BS(1,n) has two generators");
  const long m = a < 0 ? -a : a;
  Subgroup::Parts p;
  p.ambient = g;
  p.spec = std::move(spec);
  p.generators = {generator_power(gen, a)};
  if (gen == 0) {
    // g x^(am) = (d + a m n^-k, k)
    p.left_key = [g, m](const Word& w) {
      const auto e = g->affine(w);
      mpq_class q = m * inv_power(g->n(), e.k);
      q.canonicalize();
      mpq_class ratio = e.d / q;
      mpz_class fl;
      mpz_fdiv_q(fl.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
      mpq_class r = e.d - q * mpq_class(fl);
      r.canonicalize();
      return r.get_str() + "@" + std::to_string(e.k);
    };
    if (m == 1) {
      // x^j t = t x^(nj) and x^(nq + j) t^-1 = x^j t^-1 x^q.
      std::vector<Word> sample;
      for (long j = 0; j < g->n(); ++j) sample.push_back(generator_power(0, j));
      p.neighbor_sample = std::move(sample);
    }
  } else {
    p.left_key = [g, m](const Word& w) {
      const auto e = g->affine(w);
      const long r = ((e.k % m) + m) % m;
      return e.d.get_str() + "@" + std::to_string(r);
    };
  }
  return std::make_shared<Subgroup>(std::move(p));
}

Ex3Base::Ex3Base() : Group("ex3-base", Alphabet({"x", "y"})) {}

Ex3Base::Normal Ex3Base::element(std::span<const Letter> w) const {
  Normal e;
  for (Letter l : w) {
    if (l.index > 1) throw Error(Errc::UnknownGenerator, "letter index out of range");
    // g^-1 = z^-1 g since g^2 = z is central.
    if (l.sign < 0) e.z_power -= 1;
    if (!e.alternating.empty() && e.alternating.back() == l.index) {
      e.alternating.pop_back();
      e.z_power += 1;
    } else {
      e.alternating.push_back(l.index);
    }
  }
  return e;
}

Word Ex3Base::word_of(const Normal& e) const {
  Word out;
  append_power(out, 0, 2 * to_long(e.z_power));
  for (std::uint32_t g : e.alternating) out.push_back({g, 1});
  return out;
}

Word Ex3Base::normal_form(std::span<const Letter> w) const { return word_of(element(w)); }

std::vector<Word> Ex3Base::relators() const { return {{{0, 1}, {0, 1}, {1, -1}, {1, -1}}}; }

SubgroupPtr ex3_power_subgroup(const std::shared_ptr<const Ex3Base>& g, std::uint32_t gen,
                               long j, std::string spec) {
  if (j == 0) return trivial_subgroup(g);
  if (gen > 1) throw Error(Errc::InvalidSpec, "Ex3 base has two generators");
  const long m = j < 0 ? -j : j;
  Subgroup::Parts p;
  p.ambient = g;
  p.spec = std::move(spec);
  p.generators = {generator_power(gen, j)};
  p.left_key = [g, gen, m](const Word& w) {
    Ex3Base::Normal e = g->element(w);
    mpz_class modulus = m;
    if (m % 2 == 0) {
      modulus = m / 2;  // <g^m> = <z^(m/2)>, central
    } else if (!e.alternating.empty() && e.alternating.back() == gen) {
      // multiply by g^-m = z^-(m-1)/2 g^-1
      e.alternating.pop_back();
      e.z_power -= (m - 1) / 2;
    }
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), e.z_power.get_mpz_t(), modulus.get_mpz_t());
    std::string key = r.get_str() + ":";
    for (std::uint32_t a : e.alternating) key.push_back(static_cast<char>('0' + a));
    return key;
  };
  p.neighbor_sample = std::vector<Word>{Word{}};
  return std::make_shared<Subgroup>(std::move(p));
}

}  // namespace commlab
