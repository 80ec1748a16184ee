#pragma once

#include <cstddef>
#include <vector>

#include "commlab/group.hpp"
#include "commlab/hausdorff.hpp"

namespace commlab {

struct Lemma18Sample {
  Word a;  // empty unless a pair check
  Word b;
  int item = 1;  // 1..4
  std::size_t measured = 0;
  std::size_t bound = 0;
  bool pass = true;
};

struct Lemma18Report {
  std::size_t k = 0;
  std::vector<HausdorffProfile> generator_profiles;
  std::vector<Lemma18Sample> samples;  // violations, plus passes if requested
  std::size_t checked = 0;
  std::size_t violations = 0;
  bool tainted = false;
};

struct Lemma18Options {
  std::size_t b_radius = 4;   // b (and a) range over this ball
  std::size_t q_radius = 3;   // q, q' range over Q in this ball
  bool pairs = true;
  std::size_t profile_radius = 6;
  std::size_t cap = 40;       // distance cap
  std::size_t workers = 1;
  bool keep_passing = false;  // record passing samples too
};

/// max over letters s of the stabilized D(sQ, Q), plus one. Throws
/// ProfileNotStabilized if some letter's profile is not Bounded.
std::size_t lemma18_constant(const SubgroupPtr& q, const Lemma18Options& opt,
                             std::vector<HausdorffProfile>* profiles = nullptr);

Lemma18Report lemma18_check(const SubgroupPtr& q, const Lemma18Options& opt);

struct DefectResult {
  std::size_t measured = 0;
  std::size_t bound = 0;
  bool pass = false;
  bool exceeded = false;
};

/// Truncated D((aQ)(bQ), abQ) against 2k|b|, with |b| the word length of b.
DefectResult quasi_hom_defect(const SubgroupPtr& q, const Word& a, const Word& b, std::size_t k,
                              std::size_t q_radius, std::size_t cap);

struct InvariantSetReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t separated = 0;  // y outside Q with yQ != Q witnessed by g = 1
};

/// gqQ = gQ for g in the ball and q in Q within q_radius.
InvariantSetReport invariant_set_check(const SubgroupPtr& q, std::size_t radius, std::size_t q_radius);

}  // namespace commlab
