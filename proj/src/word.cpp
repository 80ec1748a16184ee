#include "commlab/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "commlab/error.hpp"

namespace commlab {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::UnknownGenerator: return "UnknownGenerator";
    case Errc::MalformedExponent: return "MalformedExponent";
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::InvalidCosetTable: return "InvalidCosetTable";
    case Errc::InvalidHomomorphism: return "InvalidHomomorphism";
    case Errc::MembershipUnknown: return "MembershipUnknown";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::AuxiliarySearchFailed: return "AuxiliarySearchFailed";
    case Errc::TransversalIncomplete: return "TransversalIncomplete";
    case Errc::LiftSearchFailed: return "LiftSearchFailed";
    case Errc::ProfileNotStabilized: return "ProfileNotStabilized";
    case Errc::PreconditionViolation: return "PreconditionViolation";
  }
  return "Unknown";
}

Word inverse(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word concat(std::span<const Letter> a, std::span<const Letter> b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word power(std::span<const Letter> w, long long k) {
  Word base = k >= 0 ? Word(w.begin(), w.end()) : inverse(w);
  Word out;
  const long long n = k >= 0 ? k : -k;
  out.reserve(base.size() * static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

Word generator_power(std::uint32_t index, long long count) {
  const Letter l{index, static_cast<std::int8_t>(count < 0 ? -1 : 1)};
  return Word(static_cast<std::size_t>(count < 0 ? -count : count), l);
}

Word free_reduce(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

bool shortlex_less(std::span<const Letter> a, std::span<const Letter> b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string encode(std::span<const Letter> w) {
  std::string out;
  out.reserve(w.size());
  for (Letter l : w) {
    const std::uint32_t c = l.code();
    if (c < 255) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back(static_cast<char>(255));
      for (int s = 0; s < 32; s += 8) out.push_back(static_cast<char>((c >> s) & 0xff));
    }
  }
  return out;
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::uint32_t i = 0; i < names_.size(); ++i) {
    const auto& n = names_[i];
    if (n.empty() || n == "1" ||
        n.find_first_of("^ \t\n,;:") != std::string::npos) {
      throw Error(Errc::InvalidSpec, "bad generator name '" + n + "'");
    }
    if (!lookup_.emplace(n, i).second) {
      throw Error(Errc::InvalidSpec, "duplicate generator name '" + n + "'");
    }
  }
}

std::uint32_t Alphabet::index_of(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) {
    throw Error(Errc::UnknownGenerator, std::string(name));
  }
  return it->second;
}

bool Alphabet::contains(std::string_view name) const {
  return lookup_.count(std::string(name)) > 0;
}

Word Alphabet::parse(std::string_view text) const {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view atom = text.substr(i, j - i);
    i = j;

    std::string_view name = atom;
    long long exponent = 1;
    if (auto caret = atom.find('^'); caret != std::string_view::npos) {
      name = atom.substr(0, caret);
      std::string_view digits = atom.substr(caret + 1);
      if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
      auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
      if (digits.empty() || ec != std::errc() ||
          ptr != digits.data() + digits.size()) {
        throw Error(Errc::MalformedExponent, std::string(atom));
      }
    }
    if (name == "1" && !contains(name)) continue;
    const std::uint32_t idx = index_of(name);
    const Word run = generator_power(idx, exponent);
    out.insert(out.end(), run.begin(), run.end());
  }
  return out;
}

std::string Alphabet::format(std::span<const Letter> w) const {
  if (w.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    const long long run = static_cast<long long>(j - i) * w[i].sign;
    if (!out.empty()) out.push_back(' ');
    out += name(w[i].index);
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

std::string Alphabet::letter_name(Letter l) const {
  return l.sign > 0 ? name(l.index) : name(l.index) + "^-1";
}

std::vector<std::string> default_generator_names(std::size_t n) {
  static const char* small[] = {"x", "y", "z"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(n <= 3 ? std::string(small[i]) : "x" + std::to_string(i + 1));
  }
  return out;
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(sep, start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view piece = text.substr(start, end - start);
    while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.front())))
      piece.remove_prefix(1);
    while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.back())))
      piece.remove_suffix(1);
    if (!piece.empty()) out.emplace_back(piece);
    start = end + 1;
  }
  return out;
}

}  // namespace commlab
