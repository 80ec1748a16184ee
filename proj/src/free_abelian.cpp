#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

#include "commlab/catalog.hpp"
#include "commlab/error.hpp"

namespace commlab {

Word FreeGroup::multiply(std::span<const Letter> nf, std::span<const Letter> w) const {
  Word out(nf.begin(), nf.end());
  for (Letter l : w) {
    if (!out.empty() && out.back() == l.inverse()) out.pop_back();
    else out.push_back(l);
  }
  return out;
}

AbelianGroup::AbelianGroup(std::string spec, Alphabet alphabet, IntMatrix relations,
                           std::vector<std::size_t> column_order)
    : Group(std::move(spec), std::move(alphabet)),
      relations_(relations.rows() ? std::move(relations) : IntMatrix(0, 0)),
      order_(std::move(column_order)) {
  const std::size_t n = rank();
  if (relations_.rows() == 0) relations_ = IntMatrix(0, n);
  if (relations_.cols() != n) throw Error(Errc::InvalidSpec, "relation width mismatch");
  lattice_ = HermiteLattice(relations_, order_);
}

IntVector AbelianGroup::exponents(std::span<const Letter> w) const {
  IntVector v(rank(), BigInt(0));
  for (Letter l : w) {
    if (l.index >= rank()) throw Error(Errc::UnknownGenerator, "letter index out of range");
    v[l.index] += l.sign;
  }
  return v;
}

Word AbelianGroup::word_of(const IntVector& v) const {
  Word out;
  for (std::uint32_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!v[i].fits_slong_p()) throw Error(Errc::BudgetExceeded, "exponent too large for a word");
    const Word run = generator_power(i, v[i].get_si());
    out.insert(out.end(), run.begin(), run.end());
  }
  return out;
}

Word AbelianGroup::normal_form(std::span<const Letter> w) const {
  return word_of(reduce(exponents(w)));
}

std::vector<Word> AbelianGroup::relators() const {
  std::vector<Word> out;
  for (std::size_t i = 0; i < relations_.rows(); ++i) {
    Word r;
    for (std::uint32_t j = 0; j < rank(); ++j) {
      const Word run = generator_power(j, relations_(i, j).get_si());
      r.insert(r.end(), run.begin(), run.end());
    }
    out.push_back(std::move(r));
  }
  for (std::uint32_t i = 0; i < rank(); ++i)
    for (std::uint32_t j = i + 1; j < rank(); ++j)
      out.push_back({{i, 1}, {j, 1}, {i, -1}, {j, -1}});
  return out;
}

namespace {

std::vector<std::size_t> natural_order(std::size_t n) {
  std::vector<std::size_t> o(n);
  std::iota(o.begin(), o.end(), 0);
  return o;
}

std::string vector_key(const IntVector& v) {
  std::string out;
  for (const auto& x : v) {
    out += x.get_str();
    out.push_back(',');
  }
  return out;
}

}  // namespace

std::shared_ptr<const FreeGroup> make_free(std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidSpec, "free group needs rank >= 1");
  return std::make_shared<FreeGroup>("free:" + std::to_string(n),
                                     Alphabet(default_generator_names(n)));
}

std::shared_ptr<const AbelianGroup> make_free_abelian(std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidSpec, "abelian group needs rank >= 1");
  return std::make_shared<AbelianGroup>("abelian:" + std::to_string(n),
                                        Alphabet(default_generator_names(n)), IntMatrix(0, n),
                                        natural_order(n));
}

std::shared_ptr<const AbelianGroup> make_cyclic(std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidSpec, "cyclic group needs order >= 1");
  IntMatrix r(1, 1);
  r(0, 0) = static_cast<unsigned long>(n);
  return std::make_shared<AbelianGroup>("cyclic:" + std::to_string(n), Alphabet({"x"}),
                                        std::move(r), natural_order(1));
}

std::shared_ptr<const AbelianGroup> make_ladder(std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidSpec, "hladder needs n >= 1");
  std::vector<std::string> names;
  for (std::size_t i = 0; i <= n; ++i) names.push_back("x" + std::to_string(i));
  // Pivot on x_n .. x_1 first so those coordinates land in {0, 1} and x0 stays free.
  std::vector<std::size_t> order(n + 1);
  for (std::size_t i = 0; i <= n; ++i) order[i] = n - i;
  return std::make_shared<AbelianGroup>("hladder:" + std::to_string(n), Alphabet(names),
                                        ladder_relations(n), std::move(order));
}

SubgroupPtr abelian_span(const std::shared_ptr<const AbelianGroup>& g, std::vector<Word> gens,
                         std::string spec) {
  std::vector<IntVector> rows;
  for (const auto& w : gens) rows.push_back(g->exponents(w));
  const IntMatrix span = IntMatrix::from_rows(rows, g->rank());
  auto lattice = std::make_shared<HermiteLattice>(IntMatrix::stack(g->relations(), span),
                                                  g->column_order());
  Subgroup::Parts p;
  p.ambient = g;
  p.spec = std::move(spec);
  p.generators = std::move(gens);
  p.left_key = [g, lattice](const Word& w) {
    return vector_key(lattice->reduce(g->exponents(w)));
  };
  // g h s H = g s H in an abelian group.
  p.neighbor_sample = std::vector<Word>{Word{}};
  return std::make_shared<Subgroup>(std::move(p));
}

SubgroupPtr free_cyclic_span(const std::shared_ptr<const FreeGroup>& g, const Word& c,
                             std::string spec) {
  Word core = free_reduce(c);
  Word prefix;
  std::size_t lo = 0, hi = core.size();
  while (hi - lo >= 2 && core[lo] == core[hi - 1].inverse()) {
    prefix.push_back(core[lo]);
    ++lo;
    --hi;
  }
  Word cyc(core.begin() + static_cast<std::ptrdiff_t>(lo),
           core.begin() + static_cast<std::ptrdiff_t>(hi));

  Subgroup::Parts p;
  p.ambient = g;
  p.spec = std::move(spec);
  p.generators = {core};
  if (cyc.empty()) {
    p.left_key = [g](const Word& w) { return g->key(w); };
    p.neighbor_sample = std::vector<Word>{Word{}};
    return std::make_shared<Subgroup>(std::move(p));
  }
  // gH = (g p)<cyc> p^-1; pick the shortest element of (g p)<cyc>, shortlex
  // on ties. Beyond |k| > 2|u|/|cyc| every u cyc^k is longer than u.
  p.left_key = [g, prefix, cyc](const Word& w) {
    const Word u = g->multiply(g->normal_form(w), prefix);
    const Word cinv = inverse(cyc);
    const std::size_t window = 2 * u.size() / cyc.size() + 2;
    Word best = u;
    Word up = u, down = u;
    for (std::size_t k = 1; k <= window; ++k) {
      up = g->multiply(up, cyc);
      down = g->multiply(down, cinv);
      if (shortlex_less(up, best)) best = up;
      if (shortlex_less(down, best)) best = down;
    }
    return encode(best);
  };
  return std::make_shared<Subgroup>(std::move(p));
}

CosetTable CosetTable::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  long n = -1, k = -1;
  if (!(in >> n >> k) || n <= 0 || k <= 0) {
    throw Error(Errc::InvalidCosetTable, "header must be 'n k' with positive entries");
  }
  CosetTable t;
  t.cosets = static_cast<std::size_t>(n);
  t.action.assign(static_cast<std::size_t>(k), std::vector<std::size_t>(t.cosets));
  t.inverse_action = t.action;
  for (std::size_t g = 0; g < t.action.size(); ++g) {
    std::vector<bool> hit(t.cosets, false);
    for (std::size_t c = 0; c < t.cosets; ++c) {
      long v = -1;
      if (!(in >> v)) throw Error(Errc::InvalidCosetTable, "table truncated");
      if (v < 0 || static_cast<std::size_t>(v) >= t.cosets || hit[static_cast<std::size_t>(v)]) {
        throw Error(Errc::InvalidCosetTable,
                    "row " + std::to_string(g) + " is not a permutation of 0.." +
                        std::to_string(t.cosets - 1));
      }
      hit[static_cast<std::size_t>(v)] = true;
      t.action[g][c] = static_cast<std::size_t>(v);
      t.inverse_action[g][static_cast<std::size_t>(v)] = c;
    }
  }
  std::string extra;
  if (in >> extra) throw Error(Errc::InvalidCosetTable, "trailing data after table");

  std::vector<bool> seen(t.cosets, false);
  std::deque<std::size_t> q{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!q.empty()) {
    const std::size_t c = q.front();
    q.pop_front();
    for (std::size_t g = 0; g < t.action.size(); ++g)
      for (std::size_t d : {t.action[g][c], t.inverse_action[g][c]})
        if (!seen[d]) {
          seen[d] = true;
          ++reached;
          q.push_back(d);
        }
  }
  if (reached != t.cosets) throw Error(Errc::InvalidCosetTable, "action is not transitive");
  return t;
}

CosetTable CosetTable::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::InvalidCosetTable, "cannot read '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return parse(s.str());
}

std::size_t CosetTable::run(std::size_t start, std::span<const Letter> w) const {
  std::size_t c = start;
  for (Letter l : w) {
    if (l.index >= action.size()) throw Error(Errc::UnknownGenerator, "letter out of table range");
    c = l.sign > 0 ? action[l.index][c] : inverse_action[l.index][c];
  }
  return c;
}

FreeFIndexGroup::FreeFIndexGroup(std::string spec, std::shared_ptr<const CosetTable> table)
    : FreeGroup(std::move(spec), Alphabet(default_generator_names(table->action.size()))),
      table_(std::move(table)) {}

SubgroupPtr coset_table_subgroup(const std::shared_ptr<const FreeGroup>& g,
                                 std::shared_ptr<const CosetTable> table, std::string spec) {
  if (table->action.size() != g->rank()) {
    throw Error(Errc::InvalidCosetTable, "table has " + std::to_string(table->action.size()) +
                                             " generators, group has " +
                                             std::to_string(g->rank()));
  }
  // Schreier generators from a BFS spanning tree of the coset graph.
  std::vector<std::optional<Word>> rep(table->cosets);
  rep[0] = Word{};
  std::deque<std::size_t> q{0};
  const auto letters = g->letters();
  while (!q.empty()) {
    const std::size_t c = q.front();
    q.pop_front();
    for (Letter l : letters) {
      const Letter one[1] = {l};
      const std::size_t d = table->run(c, one);
      if (!rep[d]) {
        rep[d] = g->multiply(*rep[c], one);
        q.push_back(d);
      }
    }
  }
  std::vector<Word> gens;
  for (std::size_t c = 0; c < table->cosets; ++c)
    for (std::uint32_t i = 0; i < g->rank(); ++i) {
      const Letter one[1] = {Letter{i, 1}};
      const std::size_t d = table->run(c, one);
      Word s = g->multiply(g->multiply(*rep[c], one), inverse(*rep[d]));
      if (!s.empty() && std::find(gens.begin(), gens.end(), s) == gens.end()) {
        gens.push_back(std::move(s));
      }
    }

  Subgroup::Parts p;
  p.ambient = g;
  p.spec = std::move(spec);
  p.kind = SubgroupKind::CosetTable;
  p.generators = std::move(gens);
  // The table acts on right cosets Hw; gH is determined by H g^-1.
  p.left_key = [table](const Word& w) { return std::to_string(table->run(0, inverse(w))); };
  return std::make_shared<Subgroup>(std::move(p));
}

}  // namespace commlab
