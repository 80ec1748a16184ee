#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "commlab/group.hpp"

namespace commlab {

/// Global vertex cap: COMMLAB_MAX_VERTICES, default 200000.
std::size_t vertex_cap();

/// Each letter s^{±1} as a one-letter word.
std::vector<Word> letter_steps(const Group& g);
/// The given words plus their inverses, deduplicated, in input order.
std::vector<Word> symmetric_steps(const Group& g, std::span<const Word> gens);

struct BallElement {
  Word word;  // shortlex-least geodesic over the steps
  Word nf;
  std::size_t depth = 0;
};

/// Elements at distance <= radius from the identity in breadth-first,
/// shortlex order. Steps default to the letters.
class Ball {
 public:
  Ball(const Group& g, std::size_t radius, std::vector<Word> steps = {},
       std::size_t cap = vertex_cap());

  std::size_t radius() const noexcept { return radius_; }
  const std::vector<BallElement>& elements() const noexcept { return elems_; }
  std::size_t size() const noexcept { return elems_.size(); }
  const BallElement& operator[](std::size_t i) const { return elems_[i]; }
  /// Number of elements at depth <= r (a prefix of elements()).
  std::size_t count_within(std::size_t r) const;
  std::optional<std::size_t> find(const Word& nf) const;
  const std::vector<Word>& steps() const noexcept { return steps_; }

 private:
  std::size_t radius_;
  std::vector<Word> steps_;
  std::vector<BallElement> elems_;
  std::vector<std::size_t> layer_end_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace commlab
