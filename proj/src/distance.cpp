#include "commlab/distance.hpp"

#include <deque>
#include <unordered_set>

#include "commlab/ball.hpp"

namespace commlab {

CosetDistance::CosetDistance(SubgroupPtr h, std::size_t cap, std::vector<Word> steps)
    : h_(std::move(h)), cap_(cap), steps_(steps.empty() ? letter_steps(*h_->ambient()) : std::move(steps)) {
  if (h_->has_keys()) {
    dist_.emplace(*h_->right_key(Word{}), 0);
    frontier_.push_back(Word{});
  }
}

bool CosetDistance::expand() {
  if (exhausted_ || depth_ >= cap_ || frontier_.empty()) return false;
  const Group& g = *h_->ambient();
  const std::size_t limit = vertex_cap();
  std::vector<Word> next;
  for (const auto& rep : frontier_) {
    for (const auto& s : steps_) {
      Word w = g.multiply(rep, s);
      std::string k = *h_->right_key(w);
      if (dist_.count(k)) continue;
      if (dist_.size() >= limit) {
        exhausted_ = true;
        tainted_ = true;
        return false;
      }
      dist_.emplace(std::move(k), depth_ + 1);
      next.push_back(std::move(w));
    }
  }
  frontier_ = std::move(next);
  ++depth_;
  return true;
}

std::optional<std::size_t> CosetDistance::operator()(const Word& z) {
  if (!h_->has_keys()) return direct(z);
  const std::string k = *h_->right_key(z);
  while (true) {
    auto it = dist_.find(k);
    if (it != dist_.end()) return it->second;
    if (!expand()) return std::nullopt;
  }
}

// Keyless subgroups: breadth-first over z w until a member turns up.
std::optional<std::size_t> CosetDistance::direct(const Word& z) {
  const Group& g = *h_->ambient();
  std::vector<Word> layer{g.normal_form(z)};
  std::unordered_set<std::string> seen{encode(layer.front())};
  for (std::size_t d = 0;; ++d) {
    for (const auto& w : layer) {
      const Membership m = h_->contains(w);
      if (m.unknown()) tainted_ = true;
      if (m.yes()) return d;
    }
    if (d == cap_) return std::nullopt;
    std::vector<Word> next;
    for (const auto& w : layer)
      for (const auto& s : steps_) {
        Word v = g.multiply(w, s);
        if (seen.insert(encode(v)).second) next.push_back(std::move(v));
      }
    if (next.empty()) return std::nullopt;
    if (seen.size() > vertex_cap()) {
      tainted_ = true;
      return std::nullopt;
    }
    layer = std::move(next);
  }
}

}  // namespace commlab
