#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "commlab/group.hpp"
#include "commlab/hom.hpp"

namespace commlab {

/// Value of alpha or beta at an element of H; nullopt when the rule finds
/// nothing inside the witness's finite set.
using WitnessMap = std::function<std::optional<Word>(const Word&)>;

/// Finite sets A, B with h alpha(h) in gH and g h beta(h) in H for h in H.
/// Sets hold normal forms.
struct Witness {
  SubgroupPtr subgroup;
  Word g;
  std::vector<Word> a_set, b_set;
  WitnessMap alpha, beta;
  std::size_t verified_radius = 0;
};

struct SearchOptions {
  std::size_t h_radius = 8;
  std::size_t search_radius = 3;
  std::size_t max_set_size = 8;
};

/// Elements of H in the Cayley ball of the given radius, shortlex order.
std::vector<Word> subgroup_ball(const SubgroupPtr& h, std::size_t radius);

/// Greedy shortlex-least witnesses over the H-ball; nullopt when some h has
/// none within search_radius or a set outgrows max_set_size.
std::optional<Witness> witness_search(const SubgroupPtr& h, const Word& g, const SearchOptions& opt);

struct VerifyReport {
  bool passed = false;
  std::size_t radius = 0;
  std::size_t checked = 0;
  std::optional<Word> failing;  // first failing element
  std::string reason;
};

/// Rechecks the defining property on the H-ball and that every y in gH in
/// the ball lies in Hc for some c in A or B^-1.
VerifyReport witness_verify(Witness& w, std::size_t radius);

Witness witness_invert(const Witness& w);
/// Witness for k, k in A or B^-1.
Witness witness_transport(const Witness& w, const Word& k, std::size_t search_radius = 6);
/// Witness for g over the intersection of the two subgroups; the finite
/// sets are read off the intersection's ball of the given radius.
Witness witness_intersect(const Witness& wa, const Witness& wb, const SubgroupPtr& both,
                          std::size_t radius);

enum class IndexDirection { Sub, Super };
/// Sub: target <= w.subgroup with w.subgroup the union of target * rep.
/// Super: w.subgroup <= target with target the union of w.subgroup * rep.
Witness witness_finite_index(const Witness& w, const SubgroupPtr& target,
                             const std::vector<Word>& reps, IndexDirection dir,
                             std::size_t radius);

/// Pushes a witness through f; `image` must be f(subgroup) in the target.
Witness witness_pushforward(const HomPtr& f, const Witness& w, const SubgroupPtr& image,
                            std::size_t lift_budget = 20000);
/// Witness for g1 over the preimage of w.subgroup, where w is for f(g1).
Witness witness_pullback(const HomPtr& f, const Witness& w, const Word& g1,
                         const SubgroupPtr& preimage, std::size_t lift_radius = 4);

}  // namespace commlab
