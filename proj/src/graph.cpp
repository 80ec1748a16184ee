#include "commlab/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "commlab/ball.hpp"
#include "commlab/catalog.hpp"
#include "commlab/error.hpp"

namespace commlab {

std::string_view to_string(GraphKind k) noexcept {
  switch (k) {
    case GraphKind::Cayley: return "cayley";
    case GraphKind::Coset: return "coset";
    case GraphKind::Quotient: return "quotient";
  }
  return "?";
}

std::string_view to_string(ValenceVerdict v) noexcept {
  switch (v) {
    case ValenceVerdict::LocallyFiniteEvidence: return "LocallyFiniteEvidence";
    case ValenceVerdict::UnboundedEvidence: return "UnboundedEvidence";
    case ValenceVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string_view to_string(EndsClass c) noexcept {
  switch (c) {
    case EndsClass::Zero: return "Zero";
    case EndsClass::One: return "One";
    case EndsClass::Two: return "Two";
    case EndsClass::ManyUncountablePattern: return "ManyUncountablePattern";
    case EndsClass::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::optional<std::size_t> LabeledGraph::find(std::string_view key) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == key) return i;
  return std::nullopt;
}

std::vector<std::size_t> LabeledGraph::neighbors(std::size_t v) const {
  std::set<std::size_t> out;
  for (const auto& e : edges) {
    if (e.src == v) out.insert(e.dst);
    if (e.dst == v) out.insert(e.src);
  }
  return {out.begin(), out.end()};
}

std::vector<std::size_t> LabeledGraph::frontier() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (depth[i] == radius) out.push_back(i);
  return out;
}

void LabeledGraph::finalize() {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::sort(self_loops.begin(), self_loops.end());
  self_loops.erase(std::unique(self_loops.begin(), self_loops.end()), self_loops.end());

  std::vector<std::vector<std::size_t>> adj(vertices.size());
  for (const auto& e : edges) {
    adj[e.src].push_back(e.dst);
    adj[e.dst].push_back(e.src);
  }
  const std::size_t none = static_cast<std::size_t>(-1);
  depth.assign(vertices.size(), none);
  if (vertices.empty()) return;
  depth[0] = 0;
  std::deque<std::size_t> q{0};
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop_front();
    for (std::size_t w : adj[v])
      if (depth[w] == none) {
        depth[w] = depth[v] + 1;
        q.push_back(w);
      }
  }
}

bool LabeledGraph::operator==(const LabeledGraph& o) const {
  auto named = [](const LabeledGraph& g) {
    std::vector<std::tuple<std::string, std::string, std::string>> e;
    for (const auto& x : g.edges)
      e.emplace_back(g.vertices[x.src], g.label_names[x.label], g.vertices[x.dst]);
    std::vector<std::pair<std::string, std::string>> l;
    for (const auto& [v, s] : g.self_loops) l.emplace_back(g.vertices[v], g.label_names[s]);
    return std::tuple{e, l};
  };
  return kind == o.kind && group == o.group && subgroup == o.subgroup && radius == o.radius &&
         tainted == o.tainted && vertices == o.vertices && named(*this) == named(o);
}

namespace {

// Identifies cosets of H (left or right) among representatives seen so far.
class CosetIndex {
 public:
  CosetIndex(const Subgroup& h, bool right) : h_(h), right_(right) {}

  std::optional<std::size_t> find(const Word& g) {
    if (h_.has_keys()) {
      auto it = by_key_.find(key(g));
      if (it == by_key_.end()) return std::nullopt;
      return it->second;
    }
    const Group& G = *h_.ambient();
    for (std::size_t i = 0; i < reps_.size(); ++i) {
      const Word probe = right_ ? concat(g, inverse(reps_[i])) : concat(inverse(reps_[i]), g);
      const Membership m = h_.contains(G.normal_form(probe));
      if (m.unknown()) tainted = true;
      if (m.yes()) return i;
    }
    return std::nullopt;
  }

  std::size_t add(const Word& g) {
    if (h_.has_keys()) by_key_.emplace(key(g), reps_.size());
    reps_.push_back(g);
    return reps_.size() - 1;
  }

  bool tainted = false;

 private:
  std::string key(const Word& g) const { return right_ ? *h_.right_key(g) : *h_.left_key(g); }

  const Subgroup& h_;
  bool right_;
  std::unordered_map<std::string, std::size_t> by_key_;
  std::vector<Word> reps_;
};

std::vector<std::string> label_names_of(const Group& g) { return g.alphabet().names(); }

}  // namespace

LabeledGraph cayley_ball(const GroupPtr& g, std::size_t radius) {
  const Ball ball(*g, radius);
  LabeledGraph out;
  out.kind = GraphKind::Cayley;
  out.group = g->spec();
  out.radius = radius;
  out.label_names = label_names_of(*g);
  for (const auto& e : ball.elements()) out.vertices.push_back(g->format(e.nf));
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (std::uint32_t s = 0; s < g->rank(); ++s) {
      const Word one{Letter{s, 1}};
      const auto j = ball.find(g->multiply(ball[i].nf, one));
      if (!j) continue;
      if (*j == i) out.self_loops.emplace_back(i, s);
      else out.edges.push_back({i, s, *j});
    }
  }
  out.finalize();
  return out;
}

LabeledGraph coset_graph_ball(const SubgroupPtr& h, std::size_t radius, std::size_t budget) {
  const GroupPtr& g = h->ambient();
  LabeledGraph out;
  out.kind = GraphKind::Coset;
  out.group = g->spec();
  out.subgroup = h->spec();
  out.radius = radius;
  out.label_names = label_names_of(*g);

  std::vector<Word> sample;
  if (h->neighbor_sample()) {
    sample = *h->neighbor_sample();
  } else {
    out.tainted = true;
    const Ball ball(*g, budget);
    for (const auto& e : ball.elements()) {
      const Membership m = h->contains(e.nf);
      if (m.unknown()) continue;
      if (m.yes()) sample.push_back(e.nf);
    }
  }

  CosetIndex index(*h, false);
  std::vector<Word> best;  // shortlex-least representative seen per vertex
  std::vector<std::size_t> bfs_depth;
  index.add(Word{});
  best.push_back(Word{});
  bfs_depth.push_back(0);
  const std::size_t cap = vertex_cap();
  const auto letters = g->letters();

  for (std::size_t v = 0; v < best.size(); ++v) {
    const Word rep = best[v];
    for (const auto& r : sample) {
      const Word gr = g->multiply(rep, r);
      for (Letter s : letters) {
        const Letter one[1] = {s};
        Word f = g->multiply(gr, one);
        auto idx = index.find(f);
        if (!idx) {
          if (bfs_depth[v] >= radius) continue;
          if (best.size() >= cap) {
            throw Error(Errc::BudgetExceeded, "coset graph exceeds " + std::to_string(cap) +
                                                  " vertices");
          }
          idx = index.add(f);
          best.push_back(f);
          bfs_depth.push_back(bfs_depth[v] + 1);
        } else if (shortlex_less(f, best[*idx])) {
          best[*idx] = f;
        }
        const std::size_t w = *idx;
        if (w == v) out.self_loops.emplace_back(v, s.index);
        else if (s.sign > 0) out.edges.push_back({v, s.index, w});
        else out.edges.push_back({w, s.index, v});
      }
    }
  }
  for (const auto& w : best) out.vertices.push_back(g->format(w));
  out.tainted = out.tainted || index.tainted;
  out.finalize();
  return out;
}

LabeledGraph quotient_graph_ball(const SubgroupPtr& q, std::size_t radius) {
  const GroupPtr& g = q->ambient();
  const Ball ball(*g, radius);
  LabeledGraph out;
  out.kind = GraphKind::Quotient;
  out.group = g->spec();
  out.subgroup = q->spec();
  out.radius = radius;
  out.label_names = label_names_of(*g);

  CosetIndex index(*q, true);
  std::vector<std::size_t> vertex_of(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) {
    auto idx = index.find(ball[i].nf);
    if (!idx) {
      idx = index.add(ball[i].nf);
      out.vertices.push_back(g->format(ball[i].nf));
    }
    vertex_of[i] = *idx;
  }
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (std::uint32_t s = 0; s < g->rank(); ++s) {
      const Word one{Letter{s, 1}};
      const auto j = ball.find(g->multiply(ball[i].nf, one));
      if (!j) continue;
      const std::size_t a = vertex_of[i], b = vertex_of[*j];
      if (a == b) out.self_loops.emplace_back(a, s);
      else out.edges.push_back({a, s, b});
    }
  }
  out.tainted = index.tainted;
  out.finalize();
  return out;
}

std::vector<std::vector<std::size_t>> components(const LabeledGraph& g,
                                                 const std::vector<bool>& keep) {
  std::vector<std::vector<std::size_t>> adj(g.vertices.size());
  for (const auto& e : g.edges) {
    if (!keep[e.src] || !keep[e.dst]) continue;
    adj[e.src].push_back(e.dst);
    adj[e.dst].push_back(e.src);
  }
  std::vector<bool> seen(g.vertices.size(), false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < g.vertices.size(); ++s) {
    if (!keep[s] || seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = true;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (std::size_t w : adj[comp[i]])
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_tree(const LabeledGraph& g) {
  if (g.vertices.empty()) return false;
  std::set<std::pair<std::size_t, std::size_t>> simple;
  for (const auto& e : g.edges) simple.emplace(std::min(e.src, e.dst), std::max(e.src, e.dst));
  const auto comps = components(g, std::vector<bool>(g.vertices.size(), true));
  return comps.size() == 1 && simple.size() + 1 == g.vertices.size();
}

namespace {

bool last_half_constant(const std::vector<std::size_t>& v) {
  if (v.empty()) return false;
  const std::size_t half = (v.size() + 1) / 2;
  for (std::size_t i = v.size() - half; i < v.size(); ++i)
    if (v[i] != v.back()) return false;
  return true;
}

}  // namespace

ValenceProfile valence_profile(const std::function<LabeledGraph(std::size_t)>& builder,
                               std::string_view vertex, const std::vector<std::size_t>& params) {
  ValenceProfile out;
  std::vector<std::size_t> vals;
  for (std::size_t p : params) {
    const LabeledGraph g = builder(p);
    const auto v = g.find(vertex);
    if (!v) throw Error(Errc::PreconditionViolation, "vertex '" + std::string(vertex) + "' absent");
    out.points.emplace_back(p, g.valence(*v));
    vals.push_back(g.valence(*v));
    out.tainted = out.tainted || g.tainted;
  }
  bool increasing = vals.size() >= 2;
  for (std::size_t i = 1; i < vals.size(); ++i) increasing = increasing && vals[i] > vals[i - 1];
  if (increasing) out.verdict = ValenceVerdict::UnboundedEvidence;
  else if (vals.size() >= 2 && last_half_constant(vals)) out.verdict = ValenceVerdict::LocallyFiniteEvidence;
  return out;
}

EndsReport ends_estimate(const LabeledGraph& g, const std::vector<std::size_t>& removed) {
  EndsReport out;
  out.probe_radius = g.radius;
  out.tainted = g.tainted;
  for (std::size_t r : removed) {
    if (g.radius < r + 3) {
      throw Error(Errc::PreconditionViolation, "probe radius must exceed removed radius + 2");
    }
    std::vector<bool> keep(g.vertices.size());
    for (std::size_t v = 0; v < keep.size(); ++v) keep[v] = g.depth[v] >= r;
    std::size_t count = 0;
    for (const auto& comp : components(g, keep)) {
      for (std::size_t v : comp)
        if (g.depth[v] == g.radius) {
          ++count;
          break;
        }
    }
    out.counts.emplace_back(r, count);
  }
  std::vector<std::size_t> c;
  for (const auto& [r, n] : out.counts) c.push_back(n);
  const bool all_zero = std::all_of(c.begin(), c.end(), [](std::size_t n) { return n == 0; });
  const bool big = std::any_of(c.begin(), c.end(), [](std::size_t n) { return n >= 3; });
  const bool nondecreasing = std::is_sorted(c.begin(), c.end());
  if (c.empty()) out.classification = EndsClass::Inconclusive;
  else if (all_zero) out.classification = EndsClass::Zero;
  else if (big && nondecreasing) out.classification = EndsClass::ManyUncountablePattern;
  else if (last_half_constant(c) && c.back() == 1) out.classification = EndsClass::One;
  else if (last_half_constant(c) && c.back() == 2) out.classification = EndsClass::Two;
  else out.classification = EndsClass::Inconclusive;
  if (out.tainted && out.classification != EndsClass::Zero) {
    out.classification = EndsClass::Inconclusive;
  }
  return out;
}

EndsReport ends_estimate(const std::function<LabeledGraph(std::size_t)>& builder,
                         const std::vector<std::size_t>& removed, std::size_t probe_radius) {
  return ends_estimate(builder(probe_radius), removed);
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string export_dot(const LabeledGraph& g) {
  std::ostringstream os;
  os << "digraph \"" << to_string(g.kind) << "\" {\n";
  os << "  // group=" << g.group;
  if (g.subgroup) os << " subgroup=" << *g.subgroup;
  os << " radius=" << g.radius << (g.tainted ? " tainted" : "") << "\n";
  for (const auto& v : g.vertices) os << "  \"" << dot_escape(v) << "\";\n";
  for (const auto& e : g.edges) {
    os << "  \"" << dot_escape(g.vertices[e.src]) << "\" -> \"" << dot_escape(g.vertices[e.dst])
       << "\" [label=\"" << dot_escape(g.label_names[e.label]) << "\"];\n";
  }
  for (const auto& [v, s] : g.self_loops) {
    os << "  \"" << dot_escape(g.vertices[v]) << "\" -> \"" << dot_escape(g.vertices[v])
       << "\" [label=\"" << dot_escape(g.label_names[s]) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_json(const LabeledGraph& g) {
  nlohmann::ordered_json j;
  j["group"] = g.group;
  j["subgroup"] = g.subgroup ? nlohmann::ordered_json(*g.subgroup) : nlohmann::ordered_json();
  j["kind"] = std::string(to_string(g.kind));
  j["radius"] = g.radius;
  j["tainted"] = g.tainted;
  j["vertices"] = g.vertices;
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : g.edges)
    edges.push_back({g.vertices[e.src], g.label_names[e.label], g.vertices[e.dst]});
  j["edges"] = std::move(edges);
  auto loops = nlohmann::ordered_json::array();
  for (const auto& [v, s] : g.self_loops) loops.push_back({g.vertices[v], g.label_names[s]});
  j["selfLoops"] = std::move(loops);
  return j.dump();
}

LabeledGraph parse_graph_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::MalformedInput, e.what());
  }
  try {
    LabeledGraph g;
    g.group = j.at("group").get<std::string>();
    if (!j.at("subgroup").is_null()) g.subgroup = j.at("subgroup").get<std::string>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "cayley") g.kind = GraphKind::Cayley;
    else if (kind == "coset") g.kind = GraphKind::Coset;
    else if (kind == "quotient") g.kind = GraphKind::Quotient;
    else throw Error(Errc::MalformedInput, "unknown graph kind '" + kind + "'");
    g.radius = j.at("radius").get<std::size_t>();
    g.tainted = j.at("tainted").get<bool>();
    g.vertices = j.at("vertices").get<std::vector<std::string>>();

    std::map<std::string, std::size_t> vid;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) vid.emplace(g.vertices[i], i);
    try {
      g.label_names = build_group(g.group)->alphabet().names();
    } catch (const Error&) {
      // group not constructible here (e.g. a missing table file): labels in
      // order of appearance
    }
    auto label = [&](const std::string& name) -> std::uint32_t {
      for (std::uint32_t i = 0; i < g.label_names.size(); ++i)
        if (g.label_names[i] == name) return i;
      g.label_names.push_back(name);
      return static_cast<std::uint32_t>(g.label_names.size() - 1);
    };
    auto vertex = [&](const std::string& key) {
      auto it = vid.find(key);
      if (it == vid.end()) throw Error(Errc::MalformedInput, "edge endpoint '" + key + "' unknown");
      return it->second;
    };
    for (const auto& e : j.at("edges")) {
      g.edges.push_back({vertex(e.at(0).get<std::string>()), label(e.at(1).get<std::string>()),
                         vertex(e.at(2).get<std::string>())});
    }
    for (const auto& l : j.at("selfLoops")) {
      g.self_loops.emplace_back(vertex(l.at(0).get<std::string>()), label(l.at(1).get<std::string>()));
    }
    g.finalize();
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::MalformedInput, e.what());
  }
}

}  // namespace commlab
