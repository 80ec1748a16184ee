#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "commlab/group.hpp"

namespace commlab {

enum class ProfileVerdict { Bounded, Growing, Inconclusive };
std::string_view to_string(ProfileVerdict v) noexcept;

/// Truncated lower bounds for the Hausdorff distance D(H, gH).
struct HausdorffProfile {
  Word g;
  std::vector<std::size_t> radii;         // 0..r_max
  std::vector<std::size_t> lower_bounds;  // cumulative, cap + 1 when exceeded
  std::vector<bool> exceeded;             // some distance went past the cap
  std::size_t witness_radius = 0;         // distance cap R
  ProfileVerdict verdict = ProfileVerdict::Inconclusive;
  std::size_t bound = 0;  // K for Bounded
  bool tainted = false;
};

struct ProfileOptions {
  std::size_t r_max = 6;
  std::size_t cap = 12;
  std::size_t workers = 1;
  std::vector<Word> steps;  // word metric; defaults to the letters
};

/// For r <= r_max: max over h in H with |h| <= r of d(h, gH), and over
/// y in gH with |y| <= r of d(y, H).
HausdorffProfile hausdorff_profile(const SubgroupPtr& h, const Word& g, const ProfileOptions& opt);

/// Constant over the last ceil(half): Bounded; strictly increasing there:
/// Growing; otherwise Inconclusive.
ProfileVerdict classify_profile(const std::vector<std::size_t>& values, std::size_t* bound = nullptr);

enum class CensusTrend { Stable, Growing };
std::string_view to_string(CensusTrend t) noexcept;

struct PackingCensus {
  std::size_t d = 0;
  std::vector<std::pair<std::size_t, std::size_t>> counts;  // (ball radius, cosets)
  CensusTrend trend = CensusTrend::Growing;
  bool tainted = false;
};

/// Cosets uwH with u in H, |w| <= D and |uw| <= r, counted per r.
PackingCensus packing_census(const SubgroupPtr& h, std::size_t d,
                             const std::vector<std::size_t>& radii);

}  // namespace commlab
