#include "commlab/ball.hpp"

#include <cstdlib>

#include "commlab/error.hpp"

namespace commlab {

std::size_t vertex_cap() {
  if (const char* env = std::getenv("COMMLAB_MAX_VERTICES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 200000;
}

std::vector<Word> letter_steps(const Group& g) {
  std::vector<Word> out;
  for (Letter l : g.letters()) out.push_back({l});
  return out;
}

std::vector<Word> symmetric_steps(const Group& g, std::span<const Word> gens) {
  std::vector<Word> out;
  std::vector<std::string> seen;
  auto add = [&](Word w) {
    std::string k = g.key(w);
    for (const auto& s : seen)
      if (s == k) return;
    seen.push_back(std::move(k));
    out.push_back(std::move(w));
  };
  for (const auto& w : gens) {
    add(w);
    add(inverse(w));
  }
  return out;
}

Ball::Ball(const Group& g, std::size_t radius, std::vector<Word> steps, std::size_t cap)
    : radius_(radius), steps_(steps.empty() ? letter_steps(g) : std::move(steps)) {
  elems_.push_back({Word{}, Word{}, 0});
  index_.emplace(encode(Word{}), 0);
  std::size_t begin = 0;
  layer_end_.push_back(1);
  for (std::size_t d = 1; d <= radius; ++d) {
    const std::size_t end = elems_.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& s : steps_) {
        Word nf = g.multiply(elems_[i].nf, s);
        std::string k = encode(nf);
        if (index_.count(k)) continue;
        if (elems_.size() >= cap) {
          throw Error(Errc::BudgetExceeded,
                      "ball of radius " + std::to_string(radius) + " exceeds " +
                          std::to_string(cap) + " vertices");
        }
        index_.emplace(std::move(k), elems_.size());
        elems_.push_back({concat(elems_[i].word, s), std::move(nf), d});
      }
    }
    begin = end;
    layer_end_.push_back(elems_.size());
    if (begin == elems_.size()) {
      // saturated: later layers are empty
      while (layer_end_.size() <= radius) layer_end_.push_back(elems_.size());
      break;
    }
  }
}

std::size_t Ball::count_within(std::size_t r) const {
  if (r >= layer_end_.size()) return elems_.size();
  return layer_end_[r];
}

std::optional<std::size_t> Ball::find(const Word& nf) const {
  auto it = index_.find(encode(nf));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace commlab
