#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "commlab/group.hpp"
#include "commlab/hnn.hpp"
#include "commlab/lattice.hpp"

namespace commlab {

class FreeGroup : public Group {
 public:
  FreeGroup(std::string spec, Alphabet alphabet) : Group(std::move(spec), std::move(alphabet)) {}
  Word normal_form(std::span<const Letter> w) const override { return free_reduce(w); }
  Word multiply(std::span<const Letter> nf, std::span<const Letter> w) const override;
  std::vector<Word> relators() const override { return {}; }
};

/// Z^n modulo a relation lattice; elements are Hermite-reduced vectors.
class AbelianGroup : public Group {
 public:
  AbelianGroup(std::string spec, Alphabet alphabet, IntMatrix relations,
               std::vector<std::size_t> column_order);

  const IntMatrix& relations() const noexcept { return relations_; }
  const std::vector<std::size_t>& column_order() const noexcept { return order_; }
  IntVector exponents(std::span<const Letter> w) const;
  IntVector reduce(IntVector v) const { return lattice_.reduce(std::move(v)); }
  Word word_of(const IntVector& v) const;

  Word normal_form(std::span<const Letter> w) const override;
  std::vector<Word> relators() const override;

 private:
  IntMatrix relations_;
  std::vector<std::size_t> order_;
  HermiteLattice lattice_;
};

std::shared_ptr<const FreeGroup> make_free(std::size_t n);
std::shared_ptr<const AbelianGroup> make_free_abelian(std::size_t n);
std::shared_ptr<const AbelianGroup> make_cyclic(std::size_t n);
/// H_n = <x0..xn | x0^(2^k) = xk^2, commuting>.
std::shared_ptr<const AbelianGroup> make_ladder(std::size_t n);

/// Subgroup of an abelian group generated by the given words; exact keys by
/// Hermite reduction modulo relations plus generators.
SubgroupPtr abelian_span(const std::shared_ptr<const AbelianGroup>& g, std::vector<Word> gens,
                         std::string spec);

/// Cyclic subgroup <c> of a free group with exact coset keys.
SubgroupPtr free_cyclic_span(const std::shared_ptr<const FreeGroup>& g, const Word& c,
                             std::string spec);

/// Element (value, level) of the affine model of BS(1,n): value is
/// numerator * n^exponent with numerator not divisible by n unless zero.
struct DyadicElement {
  mpz_class numerator;
  long exponent = 0;
  long level = 0;

  mpq_class value(long base) const;
  bool operator==(const DyadicElement&) const = default;
};

/// BS(1,n) = <x, t | t^-1 x t = x^n>, n >= 2, through the affine model
/// x = (1, 0), t = (0, 1), (d, k)(d', k') = (d + d' n^-k, k + k').
class BS1nGroup : public Group {
 public:
  BS1nGroup(std::string spec, long n);

  long n() const noexcept { return n_; }
  DyadicElement element(std::span<const Letter> w) const;
  Word word_of(const DyadicElement& e) const;

  Word normal_form(std::span<const Letter> w) const override;
  std::vector<Word> relators() const override;

  struct Affine {
    mpq_class d;
    long k = 0;
  };
  Affine affine(std::span<const Letter> w) const;
  DyadicElement from_affine(const Affine& a) const;
  Word word_of(const Affine& a) const;

 private:
  long n_;
};

/// x^a or t^a in BS(1,n); keys from the affine model.
SubgroupPtr bs1n_power_subgroup(const std::shared_ptr<const BS1nGroup>& g, std::uint32_t gen,
                                long a, std::string spec);

/// Base of the third example: <x, y | x^2 = y^2>. Elements are z^a s with
/// z = x^2 central and s alternating in x, y.
class Ex3Base : public Group {
 public:
  Ex3Base();

  struct Normal {
    mpz_class z_power;
    std::vector<std::uint32_t> alternating;  // generator indices, no repeats adjacent
    bool operator==(const Normal&) const = default;
  };
  Normal element(std::span<const Letter> w) const;
  Word word_of(const Normal& e) const;

  Word normal_form(std::span<const Letter> w) const override;
  std::vector<Word> relators() const override;
};

/// <x^j> (gen 0) or <y^j> (gen 1) inside the Ex3 base.
SubgroupPtr ex3_power_subgroup(const std::shared_ptr<const Ex3Base>& g, std::uint32_t gen,
                               long j, std::string spec);

std::shared_ptr<const HnnGroup> make_ex3();
/// BS(m,n) as an HNN extension of Z.
std::shared_ptr<const HnnGroup> make_bs_hnn(long m, long n);
/// HNN of H_n over x0 -> x0^2.
std::shared_ptr<const HnnGroup> make_ex2hnn(std::size_t n);
/// Ascending HNN of Z^m for the injective endomorphism with the given
/// generator images (rows).
std::shared_ptr<const HnnGroup> make_ascending_hnn(const std::shared_ptr<const AbelianGroup>& base,
                                                   const IntMatrix& images, std::string spec);

/// Free group of rank k plus the subgroup described by a permutation coset
/// table (line 1 "n k", then k lines of n 0-based images).
struct CosetTable {
  std::size_t cosets = 0;
  std::vector<std::vector<std::size_t>> action;  // action[gen][coset]
  std::vector<std::vector<std::size_t>> inverse_action;

  static CosetTable parse(std::string_view text);
  static CosetTable load(const std::string& path);
  std::size_t run(std::size_t start, std::span<const Letter> w) const;
};

/// fsub:<path> - the free group the table acts on, carrying the table.
class FreeFIndexGroup : public FreeGroup {
 public:
  FreeFIndexGroup(std::string spec, std::shared_ptr<const CosetTable> table);
  const std::shared_ptr<const CosetTable>& table() const noexcept { return table_; }

 private:
  std::shared_ptr<const CosetTable> table_;
};

SubgroupPtr coset_table_subgroup(const std::shared_ptr<const FreeGroup>& g,
                                 std::shared_ptr<const CosetTable> table, std::string spec);

struct SubgroupOptions {
  std::size_t search_budget = 100;
};

/// Group spec DSL: free:n, abelian:n, cyclic:n, bs:m,n, ex3, hladder:n,
/// ex2hnn:n, asc-hnn:<base>:<images>, fsub:<path>.
GroupPtr build_group(std::string_view spec);

/// Subgroup DSL: cyclic-span:w, abelian-span:w1,w2, base, coset-table:path,
/// gens:w1,w2, whole, trivial.
SubgroupPtr subgroup_of(const GroupPtr& g, std::string_view spec,
                        const SubgroupOptions& opts = {});

}  // namespace commlab
