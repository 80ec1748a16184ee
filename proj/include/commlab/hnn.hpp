#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "commlab/group.hpp"

namespace commlab {

enum class Side { Domain, Image };

/// Data of an HNN extension <base, t | t^-1 a t = phi(a), a in A>.
/// The engine assumes both associated subgroups are central in the base,
/// which holds for every catalog instance.
struct HnnSpec {
  GroupPtr base;
  std::string stable_name = "t";
  std::vector<Word> domain_generators;             // generate A
  std::function<bool(const Word&)> in_domain;      // base normal forms
  std::function<bool(const Word&)> in_image;
  std::function<Word(const Word&)> transfer;       // A -> B
  std::function<Word(const Word&)> inverse_transfer;
  /// g = c r with c in A (Domain) or B (Image) and r depending only on the
  /// coset of g.
  std::function<std::pair<Word, Word>(const Word&, Side)> split;
};

/// Pinch-free decomposition p0 t^e1 p1 ... t^ek pk.
struct BrittonForm {
  std::vector<Word> parts;  // k + 1 base normal forms
  std::vector<int> signs;   // k entries, each +1 or -1
};

class HnnGroup : public Group {
 public:
  HnnGroup(std::string spec, HnnSpec hnn);

  const HnnSpec& hnn() const noexcept { return h_; }
  const GroupPtr& base() const noexcept { return h_.base; }
  std::uint32_t stable_index() const noexcept {
    return static_cast<std::uint32_t>(h_.base->rank());
  }

  BrittonForm reduce(std::span<const Letter> w) const;
  /// Pinch-free word; t-length equals the canonical t-length.
  Word britton_reduce(std::span<const Letter> w) const;
  bool has_pinch(std::span<const Letter> w) const;
  std::size_t t_length(std::span<const Letter> w) const;

  Word normal_form(std::span<const Letter> w) const override;
  std::vector<Word> relators() const override;

  /// Key of the left coset gK for a subgroup K of the base.
  std::string base_coset_key(const Word& g, const Subgroup& k) const;

 private:
  Word assemble(const BrittonForm& f) const;
  HnnSpec h_;
};

/// K (a subgroup of the base) viewed inside the HNN extension.
SubgroupPtr hnn_base_subgroup(const std::shared_ptr<const HnnGroup>& g, const SubgroupPtr& k,
                              std::string spec,
                              std::optional<std::vector<Word>> neighbor_sample = std::nullopt);

}  // namespace commlab
