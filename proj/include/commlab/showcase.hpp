#pragma once

#include <cstddef>
#include <optional>

#include "commlab/graph.hpp"
#include "commlab/report.hpp"

namespace commlab {

struct ExampleResult {
  Json bundle;
  bool pass = false;
  bool conclusive = true;
};

struct ShowcaseOptions {
  std::size_t workers = 1;
};

/// Scripted checks for the four worked examples; n in 1..4.
ExampleResult run_example(int n, const ShowcaseOptions& opt = {});

/// Length of the cycle of `label` edges through v; nullopt if the cycle
/// leaves the truncated graph.
std::optional<std::size_t> label_cycle_length(const LabeledGraph& g, std::size_t v, std::uint32_t label);

/// Exponent sum of generator `gen` in the word naming vertex v.
long vertex_level(const LabeledGraph& g, const Group& group, std::size_t v, std::uint32_t gen);

}  // namespace commlab
