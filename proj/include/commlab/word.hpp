#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace commlab {

/// One letter s^{±1} of a word over an ordered generating set.
struct Letter {
  std::uint32_t index = 0;
  std::int8_t sign = 1;

  /// Position in the shortlex alphabet: g_0, g_0^-1, g_1, g_1^-1, ...
  constexpr std::uint32_t code() const noexcept {
    return 2 * index + (sign < 0 ? 1u : 0u);
  }
  constexpr Letter inverse() const noexcept {
    return {index, static_cast<std::int8_t>(-sign)};
  }
  static constexpr Letter from_code(std::uint32_t c) noexcept {
    return {c / 2, static_cast<std::int8_t>(c % 2 ? -1 : 1)};
  }

  friend constexpr bool operator==(Letter a, Letter b) noexcept {
    return a.index == b.index && a.sign == b.sign;
  }
  friend constexpr std::strong_ordering operator<=>(Letter a,
                                                    Letter b) noexcept {
    return a.code() <=> b.code();
  }
};

using Word = std::vector<Letter>;

Word inverse(std::span<const Letter> w);
Word concat(std::span<const Letter> a, std::span<const Letter> b);
Word power(std::span<const Letter> w, long long k);
/// `count` copies of generator `index` with the sign of `count`.
Word generator_power(std::uint32_t index, long long count);

/// Cancels adjacent s s^-1 pairs until none remain.
Word free_reduce(std::span<const Letter> w);

/// Shortlex: shorter first, then lexicographic on Letter::code().
bool shortlex_less(std::span<const Letter> a, std::span<const Letter> b);

/// Compact byte encoding of a word, used as a hash key.
std::string encode(std::span<const Letter> w);

/// Ordered generator names plus the text grammar
///   word  := atom*        (whitespace separated; empty text is the identity)
///   atom  := name | name^k | 1
/// `1` is accepted as an explicit identity atom.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::uint32_t index) const { return names_.at(index); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::uint32_t index_of(std::string_view name) const;
  bool contains(std::string_view name) const;

  Word parse(std::string_view text) const;
  /// Runs of equal letters collapse to name^k; the empty word prints as "1".
  std::string format(std::span<const Letter> w) const;
  /// Name of the letter, with a trailing ^-1 for inverses.
  std::string letter_name(Letter l) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> lookup_;
};

/// x, y, z for small ranks, x1..xn otherwise.
std::vector<std::string> default_generator_names(std::size_t n);

/// Splits on `sep`, trimming whitespace and dropping empty pieces.
std::vector<std::string> split_list(std::string_view text, char sep);

}  // namespace commlab
