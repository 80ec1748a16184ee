#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "commlab/lattice.hpp"

using namespace commlab;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int span) {
  std::uniform_int_distribution<int> d(-span, span);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// Leibniz expansion over permutations
BigInt leibniz(const IntMatrix& m) {
  std::vector<std::size_t> p(m.rows());
  std::iota(p.begin(), p.end(), 0);
  BigInt total = 0;
  do {
    BigInt term = 1;
    for (std::size_t i = 0; i < p.size(); ++i) term *= m(i, p[i]);
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
    total += inversions % 2 ? BigInt(-term) : term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// d_k = gcd of k x k minors; invariant factors are d_k / d_(k-1)
IntVector factors_by_minors(const IntMatrix& m) {
  IntVector out;
  BigInt prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    BigInt g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(r[i], c[j]);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), BigInt(leibniz(sub)).get_mpz_t());
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

}  // namespace

TEST_CASE("determinant agrees with the Leibniz expansion") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const IntMatrix m = random_matrix(rng, n, n, 9);
    CHECK(determinant(m) == leibniz(m));
  }
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
}

TEST_CASE("Smith form: factorization, unimodularity, divisibility, minors") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    const IntMatrix m = random_matrix(rng, r, c, trial % 3 == 0 ? 30 : 6);
    const SnfResult s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.D(i, j) == 0);
    const IntVector f = s.invariant_factors();
    CHECK(f.size() == s.rank);
    for (std::size_t i = 0; i + 1 < f.size(); ++i) CHECK(f[i + 1] % f[i] == 0);
    CHECK(f == factors_by_minors(m));
  }
}

TEST_CASE("Smith form of fixed matrices") {
  CHECK(smith_normal_form(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}).invariant_factors() ==
        IntVector{2, 6, 12});
  CHECK(smith_normal_form(IntMatrix{{0, 0}, {0, 0}}).rank == 0);
  CHECK(smith_normal_form(IntMatrix{{6}}).invariant_factors() == IntVector{6});
}

TEST_CASE("Hermite reduction separates exactly the cosets") {
  // L = <(2,1), (0,3)> has index 6 in Z^2
  const HermiteLattice l(IntMatrix{{2, 1}, {0, 3}});
  std::set<IntVector> reps;
  for (long a = -6; a <= 6; ++a)
    for (long b = -6; b <= 6; ++b) reps.insert(l.reduce({a, b}));
  CHECK(reps.size() == 6);
  CHECK(l.contains({2, 4}));
  CHECK_FALSE(l.contains({1, 0}));
  CHECK(l.reduce({5, 7}) == l.reduce(IntVector{BigInt(5) - 2 * 3, BigInt(7) - 3 - 3}));

  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const IntMatrix g = random_matrix(rng, 2, 3, 5);
    const HermiteLattice h(g);
    for (const auto& b : h.basis()) CHECK(h.contains(b));
    // v and v + (integer combination of generators) reduce alike
    std::uniform_int_distribution<int> d(-4, 4);
    IntVector v{d(rng), d(rng), d(rng)};
    IntVector w = v;
    const int c0 = d(rng), c1 = d(rng);
    for (std::size_t j = 0; j < 3; ++j) w[j] += c0 * g(0, j) + c1 * g(1, j);
    CHECK(h.reduce(v) == h.reduce(w));
  }
}

TEST_CASE("column order changes the echelon shape, not the lattice") {
  const IntMatrix g{{4, 6}, {2, 9}};
  const HermiteLattice a(g, {0, 1}), b(g, {1, 0});
  for (long x = -5; x <= 5; ++x)
    for (long y = -5; y <= 5; ++y) CHECK(a.contains({x, y}) == b.contains({x, y}));
}

TEST_CASE("solve_left") {
  const IntMatrix m{{2, 0}, {1, 3}};
  const auto c = solve_left(m, {4, 6});
  REQUIRE(c);
  CHECK((*c)[0] * 2 + (*c)[1] * 1 == 4);
  CHECK((*c)[1] * 3 == 6);
  CHECK_FALSE(solve_left(m, {5, 6}));
  CHECK_FALSE(solve_left(m, {1, 1}));
  CHECK_FALSE(solve_left(IntMatrix{{2, 4}}, {1, 2}));
}

TEST_CASE("ladder quotients by <x0> are elementary abelian of order 2^n") {
  for (std::size_t n = 1; n <= 8; ++n) {
    const IntMatrix rel = ladder_relations(n);
    IntMatrix x0(1, n + 1);
    x0(0, 0) = 1;
    // order from a determinant, exponent 2 from the lattice
    const IntMatrix square = IntMatrix::stack(x0, rel);
    CHECK(abs(determinant(square)) == BigInt(1) << n);
    const HermiteLattice l(square);
    for (std::size_t k = 1; k <= n; ++k) {
      IntVector e(n + 1);
      e[k] = 1;
      CHECK_FALSE(l.contains(e));
      e[k] = 2;
      CHECK(l.contains(e));
    }
    const QuotientInvariants q = quotient_invariants(rel, x0);
    CHECK(q.free_rank == 0);
    CHECK(q.torsion == IntVector(n, 2));
    CHECK(subgroup_index(rel, x0) == BigInt(1) << n);
  }
}

TEST_CASE("quotient invariants with free part") {
  // Z^2 / <(2, 0)> = Z/2 + Z
  const QuotientInvariants q = quotient_invariants(IntMatrix(0, 2), IntMatrix{{2, 0}});
  CHECK(q.free_rank == 1);
  CHECK(q.torsion == IntVector{2});
  CHECK_FALSE(subgroup_index(IntMatrix(0, 2), IntMatrix{{2, 0}}));
  CHECK(subgroup_index(IntMatrix(0, 2), IntMatrix{{2, 0}, {0, 3}}) == 6);
}

TEST_CASE("index against coset counting") {
  // classes of Z^n / L keyed by the fractional part of v M^-1, with M^-1 from
  // the adjugate
  std::mt19937 rng(11);
  std::size_t tried = 0;
  while (tried < 30) {
    const std::size_t n = 2 + tried % 2;
    const IntMatrix m = random_matrix(rng, n, n, 4);
    const BigInt det = leibniz(m);
    if (det == 0) {
      CHECK_FALSE(subgroup_index(IntMatrix(0, n), m));
      CHECK(quotient_invariants(IntMatrix(0, n), m).free_rank > 0);
      continue;
    }
    const BigInt d = abs(det);
    if (d > (n == 2 ? 64 : 24)) continue;
    ++tried;
    std::vector<std::vector<mpq_class>> inv(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t a = 0, r = 0; a < n; ++a) {
          if (a == i) continue;
          for (std::size_t b = 0, c = 0; b < n; ++b)
            if (b != j) minor(r, c++) = m(a, b);
          ++r;
        }
        const BigInt cof = (i + j) % 2 ? BigInt(-leibniz(minor)) : leibniz(minor);
        inv[j][i] = mpq_class(cof, det);
        inv[j][i].canonicalize();
      }
    std::set<std::vector<mpq_class>> classes;
    const long side = d.get_si();
    std::vector<long> v(n, 0);
    while (true) {
      std::vector<mpq_class> key(n);
      for (std::size_t j = 0; j < n; ++j) {
        mpq_class s = 0;
        for (std::size_t i = 0; i < n; ++i) s += v[i] * inv[i][j];
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
        key[j] = s - fl;
      }
      classes.insert(key);
      std::size_t k = 0;
      while (k < n && ++v[k] == side) v[k++] = 0;
      if (k == n) break;
    }
    CAPTURE(d);
    CHECK(classes.size() == d);
    const auto idx = subgroup_index(IntMatrix(0, n), m);
    REQUIRE(idx);
    CHECK(*idx == d);
    BigInt prod = 1;
    for (const auto& f : quotient_invariants(IntMatrix(0, n), m).torsion) prod *= f;
    CHECK(prod == d);
  }
}
