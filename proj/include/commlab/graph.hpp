#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "commlab/group.hpp"

namespace commlab {

enum class GraphKind { Cayley, Coset, Quotient };
std::string_view to_string(GraphKind k) noexcept;

struct GraphEdge {
  std::size_t src = 0;
  std::uint32_t label = 0;  // generator index
  std::size_t dst = 0;
  auto operator<=>(const GraphEdge&) const = default;
};

/// Finite truncation of a Cayley, coset or quotient graph. Vertex 0 is the
/// base vertex; vertex order is discovery order; edges are sorted and unique.
struct LabeledGraph {
  GraphKind kind = GraphKind::Cayley;
  std::string group;
  std::optional<std::string> subgroup;
  std::size_t radius = 0;
  bool tainted = false;
  std::vector<std::string> label_names;
  std::vector<std::string> vertices;
  std::vector<std::size_t> depth;  // undirected distance from vertex 0
  std::vector<GraphEdge> edges;    // src != dst
  std::vector<std::pair<std::size_t, std::uint32_t>> self_loops;

  std::optional<std::size_t> find(std::string_view key) const;
  /// Distinct adjacent vertices, either direction, loops excluded.
  std::vector<std::size_t> neighbors(std::size_t v) const;
  std::size_t valence(std::size_t v) const { return neighbors(v).size(); }
  std::vector<std::size_t> frontier() const;
  /// Sorts and deduplicates edges and loops, then recomputes depth.
  void finalize();

  bool operator==(const LabeledGraph& o) const;
};

LabeledGraph cayley_ball(const GroupPtr& g, std::size_t radius);
/// Left cosets gH within coset-graph distance `radius` of H. Uses the
/// subgroup's neighbour rule when it has one; otherwise samples H inside the
/// Cayley ball of radius `budget` and marks the graph tainted.
LabeledGraph coset_graph_ball(const SubgroupPtr& h, std::size_t radius, std::size_t budget);
/// Right cosets Qg of the Cayley ball of the given radius, edges inherited.
LabeledGraph quotient_graph_ball(const SubgroupPtr& q, std::size_t radius);

bool is_tree(const LabeledGraph& g);

enum class ValenceVerdict { LocallyFiniteEvidence, UnboundedEvidence, Inconclusive };
std::string_view to_string(ValenceVerdict v) noexcept;

struct ValenceProfile {
  std::vector<std::pair<std::size_t, std::size_t>> points;  // (parameter, valence)
  ValenceVerdict verdict = ValenceVerdict::Inconclusive;
  bool tainted = false;
};

/// Valence of `vertex` in builder(p) for each parameter p (a radius or a
/// discovery budget).
ValenceProfile valence_profile(const std::function<LabeledGraph(std::size_t)>& builder,
                               std::string_view vertex, const std::vector<std::size_t>& params);

enum class EndsClass { Zero, One, Two, ManyUncountablePattern, Inconclusive };
std::string_view to_string(EndsClass c) noexcept;

struct EndsReport {
  std::size_t probe_radius = 0;
  std::vector<std::pair<std::size_t, std::size_t>> counts;  // (removed r, components)
  EndsClass classification = EndsClass::Inconclusive;
  bool tainted = false;
};

/// Removes the vertices at depth < r and counts the undirected components
/// that still reach depth == radius.
EndsReport ends_estimate(const LabeledGraph& g, const std::vector<std::size_t>& removed);
EndsReport ends_estimate(const std::function<LabeledGraph(std::size_t)>& builder,
                         const std::vector<std::size_t>& removed, std::size_t probe_radius);
/// Components of the graph restricted to `keep`, as lists of vertex indices.
std::vector<std::vector<std::size_t>> components(const LabeledGraph& g,
                                                 const std::vector<bool>& keep);

std::string export_dot(const LabeledGraph& g);
std::string export_json(const LabeledGraph& g);
LabeledGraph parse_graph_json(std::string_view text);

}  // namespace commlab
