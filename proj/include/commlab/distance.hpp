#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "commlab/group.hpp"

namespace commlab {

/// d(z, H) = min |w| with z w in H, i.e. the distance from Hz to H in the
/// right-coset graph. Explored lazily outwards from H and memoized, so one
/// oracle answers many queries. Not thread-safe: use one per worker.
class CosetDistance {
 public:
  CosetDistance(SubgroupPtr h, std::size_t cap, std::vector<Word> steps = {});

  /// nullopt when the distance exceeds the cap (or the search was cut short).
  std::optional<std::size_t> operator()(const Word& z);

  std::size_t cap() const noexcept { return cap_; }
  /// Set when some membership verdict was Unknown or exploration hit the
  /// vertex cap; distances are then only upper-bounded evidence.
  bool tainted() const noexcept { return tainted_; }
  const SubgroupPtr& subgroup() const noexcept { return h_; }

 private:
  bool expand();
  std::optional<std::size_t> direct(const Word& z);

  SubgroupPtr h_;
  std::size_t cap_;
  std::vector<Word> steps_;
  std::unordered_map<std::string, std::size_t> dist_;
  std::vector<Word> frontier_;
  std::size_t depth_ = 0;
  bool tainted_ = false;
  bool exhausted_ = false;
};

}  // namespace commlab
