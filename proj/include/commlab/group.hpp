#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "commlab/word.hpp"

namespace commlab {

/// A finitely generated group with a fixed ordered generating set and an
/// exact normal form. Implementations are immutable and reentrant.
class Group {
 public:
  Group(std::string spec, Alphabet alphabet)
      : spec_(std::move(spec)), alphabet_(std::move(alphabet)) {}
  virtual ~Group() = default;
  Group(const Group&) = delete;
  Group& operator=(const Group&) = delete;

  const std::string& spec() const noexcept { return spec_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t rank() const noexcept { return alphabet_.size(); }

  /// Idempotent; equal elements get equal words; the identity maps to the
  /// empty word.
  virtual Word normal_form(std::span<const Letter> w) const = 0;

  /// Normal form of nf * w where nf is already normal. Engines may override
  /// with something cheaper than renormalizing the whole product.
  virtual Word multiply(std::span<const Letter> nf, std::span<const Letter> w) const {
    return normal_form(concat(nf, w));
  }

  /// Defining relators of the presentation the engine realizes.
  virtual std::vector<Word> relators() const = 0;

  bool equal(std::span<const Letter> u, std::span<const Letter> v) const {
    return normal_form(u) == normal_form(v);
  }
  bool is_identity(std::span<const Letter> w) const { return normal_form(w).empty(); }
  /// Byte key of the element; equal keys iff equal elements.
  std::string key(std::span<const Letter> w) const { return encode(normal_form(w)); }

  Word parse(std::string_view text) const { return alphabet_.parse(text); }
  std::string format(std::span<const Letter> w) const { return alphabet_.format(w); }

  /// Every letter s and s^-1, in shortlex order.
  std::vector<Letter> letters() const;

 private:
  std::string spec_;
  Alphabet alphabet_;
};

using GroupPtr = std::shared_ptr<const Group>;

enum class Verdict { Yes, No, Unknown };

struct Membership {
  Verdict verdict = Verdict::No;
  std::size_t budget = 0;  // meaningful for Unknown only

  bool yes() const noexcept { return verdict == Verdict::Yes; }
  bool unknown() const noexcept { return verdict == Verdict::Unknown; }
};

std::string_view to_string(Verdict v) noexcept;

enum class SubgroupKind { ExactCatalog, CosetTable, BoundedSearch };

std::string_view to_string(SubgroupKind k) noexcept;

/// Canonical key of the left coset gH. Equal keys iff equal cosets.
using CosetKeyFn = std::function<std::string(const Word&)>;
using MemberFn = std::function<Membership(const Word&)>;

class Subgroup {
 public:
  struct Parts {
    GroupPtr ambient;
    std::string spec;
    SubgroupKind kind = SubgroupKind::ExactCatalog;
    std::vector<Word> generators;
    CosetKeyFn left_key;  // required for exact kinds
    MemberFn member;      // used only when left_key is empty
    // Finite R inside H with: the neighbours of gH in the coset graph are
    // exactly the cosets g r s H, r in R, s a letter.
    std::optional<std::vector<Word>> neighbor_sample;
    std::string note;
  };

  explicit Subgroup(Parts parts);

  const GroupPtr& ambient() const noexcept { return p_.ambient; }
  const std::string& spec() const noexcept { return p_.spec; }
  SubgroupKind kind() const noexcept { return p_.kind; }
  const std::vector<Word>& generators() const noexcept { return p_.generators; }
  const std::string& note() const noexcept { return p_.note; }
  bool exact() const noexcept { return p_.kind != SubgroupKind::BoundedSearch; }
  bool has_keys() const noexcept { return static_cast<bool>(p_.left_key); }
  const std::optional<std::vector<Word>>& neighbor_sample() const noexcept {
    return p_.neighbor_sample;
  }

  Membership contains(const Word& w) const;
  /// Membership that treats Unknown as a hard error.
  bool contains_exact(const Word& w) const;
  std::optional<std::string> left_key(const Word& g) const;
  /// Key of the right coset Hg, via the left coset g^-1 H.
  std::optional<std::string> right_key(const Word& g) const;

 private:
  Parts p_;
  std::string identity_key_;
};

using SubgroupPtr = std::shared_ptr<const Subgroup>;

SubgroupPtr whole_group(const GroupPtr& g);
SubgroupPtr trivial_subgroup(const GroupPtr& g);
/// Membership by enumerating up to `budget` elements of <gens>; answers
/// Unknown(budget) when a word is not found and the enumeration did not close.
SubgroupPtr bounded_search_subgroup(const GroupPtr& g, std::vector<Word> gens,
                                    std::size_t budget, std::string spec);
/// b Q b^-1.
SubgroupPtr conjugate_subgroup(const SubgroupPtr& q, const Word& b);
SubgroupPtr intersect_subgroups(const SubgroupPtr& a, const SubgroupPtr& b);

}  // namespace commlab
