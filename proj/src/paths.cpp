#include "cadjust/paths.hpp"

#include <functional>

#include "cadjust/reachability.hpp"

namespace cadjust {

std::string_view to_string(NodeStatus s) {
  switch (s) {
    case NodeStatus::Endpoint:
      return "endpoint";
    case NodeStatus::Collider:
      return "collider";
    case NodeStatus::DefiniteNonCollider:
      return "non-collider";
    case NodeStatus::NonDefinite:
      return "non-definite";
  }
  return "?";
}

NodeStatus node_status(const MixedGraph& g, NodeIndex prev, NodeIndex node, NodeIndex next) {
  const EdgeMark in_from_prev = g.mark(prev, node);
  const EdgeMark in_from_next = g.mark(next, node);
  if (in_from_prev == EdgeMark::Arrow && in_from_next == EdgeMark::Arrow) return NodeStatus::Collider;
  if (g.directed(node, prev) || g.directed(node, next)) return NodeStatus::DefiniteNonCollider;
  const bool circles = in_from_prev == EdgeMark::Circle && in_from_next == EdgeMark::Circle;
  const bool undirected = g.undirected(prev, node) && g.undirected(node, next);
  if ((circles || undirected) && !g.adjacent(prev, next)) return NodeStatus::DefiniteNonCollider;
  return NodeStatus::NonDefinite;
}

bool is_path(const MixedGraph& g, const std::vector<NodeIndex>& nodes) {
  if (nodes.empty()) return false;
  NodeSet seen = g.empty_set();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] >= g.size() || seen.contains(nodes[i])) return false;
    seen.insert(nodes[i]);
    if (i > 0 && !g.adjacent(nodes[i - 1], nodes[i])) return false;
  }
  return true;
}

PathWitness make_witness(const MixedGraph& g, const std::vector<NodeIndex>& nodes) {
  if (!is_path(g, nodes)) throw QueryError("node sequence is not a path of the graph");
  PathWitness p{nodes, std::vector<NodeStatus>(nodes.size(), NodeStatus::Endpoint)};
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    p.statuses[i] = node_status(g, nodes[i - 1], nodes[i], nodes[i + 1]);
  }
  return p;
}

bool is_definite_status(const PathWitness& p) {
  for (NodeStatus s : p.statuses) {
    if (s == NodeStatus::NonDefinite) return false;
  }
  return true;
}

bool is_possibly_causal(const MixedGraph& g, const std::vector<NodeIndex>& nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (g.mark(nodes[j], nodes[i]) == EdgeMark::Arrow) return false;
    }
  }
  return true;
}

PathClass classify_path(const MixedGraph& g, const std::vector<NodeIndex>& nodes, const NodeSet& x) {
  const PathWitness p = make_witness(g, nodes);
  PathClass c;
  c.possibly_causal = is_possibly_causal(g, nodes);
  c.definite_status = is_definite_status(p);
  c.proper = x.contains(nodes.front());
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (x.contains(nodes[i])) c.proper = false;
  }
  return c;
}

namespace {

struct Search {
  Search(const MixedGraph& graph, const NodeSet& from, const NodeSet& to) : g(graph), sources(from), targets(to) {}

  const MixedGraph& g;
  const NodeSet& sources;
  const NodeSet& targets;
  bool proper = true;
  bool stop_at_target = false;
  bool require_definite = true;
  bool first_edge_into = false;
  std::function<bool(NodeIndex, NodeIndex)> first_edge;
  PathFilter filter = PathFilter::All;
  const NodeSet* given = nullptr;
  NodeSet an_given;
  // Return false to stop the search.
  std::function<bool(const std::vector<NodeIndex>&)> emit;

  std::vector<NodeIndex> path;
  NodeSet on_path;

  bool extends_ok(NodeIndex t) {
    if (on_path.contains(t)) return false;
    if (proper && sources.contains(t)) return false;
    if (path.size() == 1 && first_edge_into && g.mark(t, path[0]) != EdgeMark::Arrow) return false;
    if (path.size() == 1 && first_edge && !first_edge(path[0], t)) return false;
    if (filter == PathFilter::PossiblyCausal) {
      for (NodeIndex p : path) {
        if (g.mark(t, p) == EdgeMark::Arrow) return false;
      }
    }
    if (path.size() >= 2) {
      const NodeIndex v = path.back();
      const NodeStatus s = node_status(g, path[path.size() - 2], v, t);
      if (s == NodeStatus::NonDefinite && require_definite) return false;
      if (given) {
        if (s == NodeStatus::DefiniteNonCollider && given->contains(v)) return false;
        if (s == NodeStatus::Collider && !an_given.contains(v)) return false;
      }
    }
    return true;
  }

  bool accept() const {
    switch (filter) {
      case PathFilter::All:
      case PathFilter::PossiblyCausal:
        return true;
      case PathFilter::NonCausal:
        return !is_possibly_causal(g, path);
    }
    return true;
  }

  bool dfs() {
    const NodeIndex v = path.back();
    for (NodeIndex t : g.neighbors(v)) {
      if (!extends_ok(t)) continue;
      path.push_back(t);
      on_path.insert(t);
      bool go_on = true;
      if (targets.contains(t) && accept()) go_on = emit(path);
      if (go_on && !(stop_at_target && targets.contains(t))) go_on = dfs();
      on_path.erase(t);
      path.pop_back();
      if (!go_on) return false;
    }
    return true;
  }

  void run() {
    if (given) an_given = ancestors(g, *given);
    on_path = g.empty_set();
    for (NodeIndex s : sources) {
      path.assign(1, s);
      on_path.insert(s);
      const bool go_on = dfs();
      on_path.erase(s);
      if (!go_on) return;
    }
  }
};

}  // namespace

std::vector<PathWitness> enumerate_proper_definite_status_paths(const MixedGraph& g, const NodeSet& x,
                                                                const NodeSet& y, PathFilter filter) {
  require_disjoint(g, {&x, &y});
  std::vector<PathWitness> out;
  Search s(g, x, y);
  s.filter = filter;
  s.emit = [&](const std::vector<NodeIndex>& p) {
    out.push_back(make_witness(g, p));
    return true;
  };
  s.run();
  return out;
}

bool is_blocked(const MixedGraph& g, const PathWitness& p, const NodeSet& c) {
  if (!is_definite_status(p)) throw QueryError("blocking is defined for definite-status paths only");
  const NodeSet an_c = ancestors(g, c);
  for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
    const NodeIndex v = p.nodes[i];
    if (p.statuses[i] == NodeStatus::DefiniteNonCollider && c.contains(v)) return true;
    if (p.statuses[i] == NodeStatus::Collider && !an_c.contains(v)) return true;
  }
  return false;
}

std::optional<PathWitness> find_open_path(const MixedGraph& g, const NodeSet& x, const NodeSet& y,
                                          const NodeSet& c, PathFilter filter) {
  require_disjoint(g, {&x, &y});
  std::optional<PathWitness> found;
  Search s(g, x, y);
  s.filter = filter;
  s.given = &c;
  s.emit = [&](const std::vector<NodeIndex>& p) {
    found = make_witness(g, p);
    return false;
  };
  s.run();
  return found;
}

std::optional<PathWitness> find_possibly_causal_path(const MixedGraph& g, const NodeSet& x, const NodeSet& y,
                                                     const std::function<bool(NodeIndex, NodeIndex)>& first_edge) {
  require_disjoint(g, {&x, &y});
  std::optional<PathWitness> found;
  Search s(g, x, y);
  s.filter = PathFilter::PossiblyCausal;
  s.require_definite = false;
  s.first_edge = first_edge;
  s.emit = [&](const std::vector<NodeIndex>& p) {
    found = make_witness(g, p);
    return false;
  };
  s.run();
  return found;
}

void for_each_possibly_causal_path(const MixedGraph& g, const NodeSet& x, const NodeSet& y,
                                   const std::function<bool(const std::vector<NodeIndex>&)>& visit) {
  require_disjoint(g, {&x, &y});
  Search s(g, x, y);
  s.filter = PathFilter::PossiblyCausal;
  s.require_definite = false;
  s.emit = visit;
  s.run();
}

std::vector<PathWitness> enumerate_possibly_causal_paths(const MixedGraph& g, const NodeSet& x, const NodeSet& y,
                                                         const std::function<bool(NodeIndex, NodeIndex)>& first_edge) {
  require_disjoint(g, {&x, &y});
  std::vector<PathWitness> out;
  Search s(g, x, y);
  s.filter = PathFilter::PossiblyCausal;
  s.require_definite = false;
  s.first_edge = first_edge;
  s.emit = [&](const std::vector<NodeIndex>& p) {
    out.push_back(make_witness(g, p));
    return true;
  };
  s.run();
  return out;
}

SeparationVerdict m_separated(const MixedGraph& g, const NodeSet& a, const NodeSet& b, const NodeSet& c) {
  require_disjoint(g, {&a, &b, &c});
  SeparationVerdict verdict;
  Search s(g, a, b);
  s.stop_at_target = true;
  s.given = &c;
  s.emit = [&](const std::vector<NodeIndex>& p) {
    verdict.separated = false;
    verdict.witness = make_witness(g, p);
    return false;
  };
  s.run();
  return verdict;
}

bool is_visible(const MixedGraph& g, NodeIndex from, NodeIndex to) {
  if (g.graph_class() != GraphClass::Pag) throw GraphError(GraphError::Kind::WrongClass, "visibility needs a PAG");
  if (!g.directed(from, to)) throw QueryError(g.name(from) + " -> " + g.name(to) + " is not a directed edge");

  // Nodes into which an outside V may point: `from` itself, and parents of
  // `to` joined to `from` by a bidirected chain through parents of `to`.
  NodeSet targets(g.size(), {from});
  std::vector<NodeIndex> stack{from};
  while (!stack.empty()) {
    const NodeIndex v = stack.back();
    stack.pop_back();
    for (NodeIndex w : g.neighbors(v)) {
      if (w != to && !targets.contains(w) && g.bidirected(v, w) && g.directed(w, to)) {
        targets.insert(w);
        stack.push_back(w);
      }
    }
  }
  for (NodeIndex t : targets) {
    for (NodeIndex v : g.neighbors(t)) {
      if (v == to || v == from || targets.contains(v) || g.adjacent(v, to)) continue;
      if (g.mark(v, t) == EdgeMark::Arrow) return true;
    }
  }
  return false;
}

std::vector<PathWitness> backdoor_paths(const MixedGraph& dag, const NodeSet& x, const NodeSet& y, bool proper) {
  if (dag.graph_class() != GraphClass::Dag) throw GraphError(GraphError::Kind::WrongClass, "back-door paths need a DAG");
  require_disjoint(dag, {&x, &y});
  std::vector<PathWitness> out;
  Search s(dag, x, y);
  s.proper = proper;
  s.first_edge_into = true;
  s.emit = [&](const std::vector<NodeIndex>& p) {
    out.push_back(make_witness(dag, p));
    return true;
  };
  s.run();
  return out;
}

std::optional<PathWitness> find_open_backdoor_path(const MixedGraph& dag, const NodeSet& x, const NodeSet& y,
                                                   const NodeSet& c) {
  if (dag.graph_class() != GraphClass::Dag) throw GraphError(GraphError::Kind::WrongClass, "back-door paths need a DAG");
  require_disjoint(dag, {&x, &y});
  std::optional<PathWitness> found;
  Search s(dag, x, y);
  s.first_edge_into = true;
  s.given = &c;
  s.emit = [&](const std::vector<NodeIndex>& p) {
    found = make_witness(dag, p);
    return false;
  };
  s.run();
  return found;
}

std::string path_to_string(const MixedGraph& g, const std::vector<NodeIndex>& nodes) {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i == 0) {
      out = g.name(nodes[0]);
      continue;
    }
    const EdgeMark left = g.mark(nodes[i], nodes[i - 1]);
    const EdgeMark right = g.mark(nodes[i - 1], nodes[i]);
    auto glyph = [](EdgeMark m, bool at_left) -> std::string {
      switch (m) {
        case EdgeMark::Arrow:
          return at_left ? "<" : ">";
        case EdgeMark::Circle:
          return "o";
        default:
          return "";
      }
    };
    out += " " + glyph(left, true) + (left == EdgeMark::Tail && right == EdgeMark::Tail ? "--" : "-") +
           glyph(right, false) + " " + g.name(nodes[i]);
  }
  return out;
}

}  // namespace cadjust
