#pragma once

#include <memory>
#include <string>
#include <vector>

#include "commlab/group.hpp"

namespace commlab {

/// Homomorphism given by one target word per source generator. Construction
/// checks every source relator maps to the identity.
class Hom {
 public:
  Hom(GroupPtr source, GroupPtr target, std::vector<Word> images);

  const GroupPtr& source() const noexcept { return source_; }
  const GroupPtr& target() const noexcept { return target_; }
  const std::vector<Word>& images() const noexcept { return images_; }

  /// Target normal form of the substituted word.
  Word apply(std::span<const Letter> w) const;

 private:
  GroupPtr source_, target_;
  std::vector<Word> images_;
};

using HomPtr = std::shared_ptr<const Hom>;

HomPtr make_hom(GroupPtr source, GroupPtr target, const std::vector<std::string>& images);
HomPtr identity_hom(const GroupPtr& g);

/// Ex2HNN(n) -> BS(1,2): x0 -> x, xk -> x^(2^(k-1)), t -> t.
HomPtr ladder_to_bs(const GroupPtr& ex2hnn, const GroupPtr& bs12);
/// H_n -> H_m for m < n: xk -> x0^(2^(k-1)) for k > m, identity below.
HomPtr ladder_retraction(const GroupPtr& hn, const GroupPtr& hm);

/// f^-1(Q), with keys pulled back through f.
SubgroupPtr preimage_subgroup(const HomPtr& f, const SubgroupPtr& q);

}  // namespace commlab
