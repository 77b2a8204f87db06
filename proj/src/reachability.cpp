#include "cadjust/reachability.hpp"

#include <utility>
#include <vector>

#include "cadjust/paths.hpp"

namespace cadjust {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Pa:
      return "pa";
    case Relation::PossPa:
      return "posspa";
    case Relation::An:
      return "an";
    case Relation::De:
      return "de";
    case Relation::PossAn:
      return "possan";
    case Relation::PossDe:
      return "possde";
  }
  return "?";
}

namespace {

void check_universe(const MixedGraph& g, const NodeSet& w) {
  if (w.universe() != g.size()) throw QueryError("node set does not belong to this graph");
}

// forward: follow u -> v; otherwise follow v <- u backwards.
NodeSet directed_closure(const MixedGraph& g, const NodeSet& w, bool forward) {
  check_universe(g, w);
  NodeSet seen = w;
  std::vector<NodeIndex> stack = w.to_vector();
  while (!stack.empty()) {
    const NodeIndex v = stack.back();
    stack.pop_back();
    for (NodeIndex t : g.neighbors(v)) {
      const bool step = forward ? g.directed(v, t) : g.directed(t, v);
      if (step && !seen.contains(t)) {
        seen.insert(t);
        stack.push_back(t);
      }
    }
  }
  return seen;
}

// Unshielded walk search. In the forward direction a step v -> t is allowed
// when the edge has no arrowhead at v; backwards, when it has none at t.
NodeSet possible_closure(const MixedGraph& g, const NodeSet& w, bool forward) {
  check_universe(g, w);
  const std::size_t n = g.size();
  auto can_step = [&](NodeIndex v, NodeIndex t) {
    return forward ? g.mark(t, v) != EdgeMark::Arrow : g.mark(v, t) != EdgeMark::Arrow;
  };
  NodeSet result = w;
  std::vector<bool> seen(n * n, false);
  std::vector<std::pair<NodeIndex, NodeIndex>> stack;
  for (NodeIndex s : w) {
    for (NodeIndex t : g.neighbors(s)) {
      if (can_step(s, t) && !seen[s * n + t]) {
        seen[s * n + t] = true;
        stack.emplace_back(s, t);
      }
    }
  }
  while (!stack.empty()) {
    const auto [u, v] = stack.back();
    stack.pop_back();
    result.insert(v);
    for (NodeIndex t : g.neighbors(v)) {
      if (t == u || g.adjacent(u, t) || !can_step(v, t) || seen[v * n + t]) continue;
      seen[v * n + t] = true;
      stack.emplace_back(v, t);
    }
  }
  return result;
}

}  // namespace

NodeSet parents(const MixedGraph& g, const NodeSet& w) {
  check_universe(g, w);
  NodeSet out = g.empty_set();
  for (NodeIndex v : w) {
    for (NodeIndex u : g.neighbors(v)) {
      if (g.directed(u, v)) out.insert(u);
    }
  }
  return out - w;
}

NodeSet possible_parents(const MixedGraph& g, const NodeSet& w) {
  check_universe(g, w);
  NodeSet out = g.empty_set();
  for (NodeIndex v : w) {
    for (NodeIndex u : g.neighbors(v)) {
      if (g.mark(v, u) != EdgeMark::Arrow) out.insert(u);
    }
  }
  return out - w;
}

NodeSet ancestors(const MixedGraph& g, const NodeSet& w) { return directed_closure(g, w, false); }
NodeSet descendants(const MixedGraph& g, const NodeSet& w) { return directed_closure(g, w, true); }
NodeSet possible_ancestors(const MixedGraph& g, const NodeSet& w) { return possible_closure(g, w, false); }
NodeSet possible_descendants(const MixedGraph& g, const NodeSet& w) { return possible_closure(g, w, true); }

NodeSet relation(const MixedGraph& g, Relation r, const NodeSet& w) {
  switch (r) {
    case Relation::Pa:
      return parents(g, w);
    case Relation::PossPa:
      return possible_parents(g, w);
    case Relation::An:
      return ancestors(g, w);
    case Relation::De:
      return descendants(g, w);
    case Relation::PossAn:
      return possible_ancestors(g, w);
    case Relation::PossDe:
      return possible_descendants(g, w);
  }
  return g.empty_set();
}

NodeSet possible_mediators(const MixedGraph& g, const NodeSet& x, const NodeSet& y) {
  require_disjoint(g, {&x, &y});
  NodeSet out = g.empty_set();
  for_each_possibly_causal_path(g, x, y, [&](const std::vector<NodeIndex>& p) {
    for (std::size_t i = 1; i < p.size(); ++i) out.insert(p[i]);
    return true;
  });
  return out;
}

NodeSet forbidden_set(const MixedGraph& g, const NodeSet& x, const NodeSet& y) {
  return possible_descendants(g, possible_mediators(g, x, y));
}

}  // namespace cadjust
