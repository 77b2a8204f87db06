#include "cadjust/meek.hpp"

namespace cadjust {

namespace {

// Working copy of a PDAG's marks; mutated only inside this file.
struct Pdag {
  std::size_t n;
  std::vector<EdgeMark> marks;

  EdgeMark mark(NodeIndex from, NodeIndex at) const { return marks[from * n + at]; }
  bool adjacent(NodeIndex u, NodeIndex v) const { return mark(u, v) != EdgeMark::None; }
  bool directed(NodeIndex u, NodeIndex v) const {
    return mark(v, u) == EdgeMark::Tail && mark(u, v) == EdgeMark::Arrow;
  }
  bool undirected(NodeIndex u, NodeIndex v) const {
    return mark(v, u) == EdgeMark::Tail && mark(u, v) == EdgeMark::Tail;
  }
  void orient(NodeIndex u, NodeIndex v) {
    marks[u * n + v] = EdgeMark::Arrow;
    marks[v * n + u] = EdgeMark::Tail;
  }
};

// R1: c -> a - b, c and b not adjacent.
bool rule1(const Pdag& g, NodeIndex a, NodeIndex b) {
  for (NodeIndex c = 0; c < g.n; ++c) {
    if (c != b && g.directed(c, a) && !g.adjacent(c, b)) return true;
  }
  return false;
}

// R2: a -> c -> b with a - b.
bool rule2(const Pdag& g, NodeIndex a, NodeIndex b) {
  for (NodeIndex c = 0; c < g.n; ++c) {
    if (g.directed(a, c) && g.directed(c, b)) return true;
  }
  return false;
}

// R3: a - c -> b, a - d -> b, c and d not adjacent, a - b.
bool rule3(const Pdag& g, NodeIndex a, NodeIndex b) {
  for (NodeIndex c = 0; c < g.n; ++c) {
    if (!g.undirected(a, c) || !g.directed(c, b)) continue;
    for (NodeIndex d = c + 1; d < g.n; ++d) {
      if (g.undirected(a, d) && g.directed(d, b) && !g.adjacent(c, d)) return true;
    }
  }
  return false;
}

// R4: a - c -> d -> b with a - d, c and b not adjacent, a - b.
bool rule4(const Pdag& g, NodeIndex a, NodeIndex b) {
  for (NodeIndex c = 0; c < g.n; ++c) {
    if (c == b || !g.undirected(a, c) || g.adjacent(c, b)) continue;
    for (NodeIndex d = 0; d < g.n; ++d) {
      if (d != c && g.undirected(a, d) && g.directed(c, d) && g.directed(d, b)) return true;
    }
  }
  return false;
}

MixedGraph close(const std::vector<std::string>& names, Pdag work) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeIndex a = 0; a < work.n; ++a) {
      for (NodeIndex b = 0; b < work.n; ++b) {
        if (a == b || !work.undirected(a, b)) continue;
        if (rule1(work, a, b) || rule2(work, a, b) || rule3(work, a, b) || rule4(work, a, b)) {
          work.orient(a, b);
          changed = true;
        }
      }
    }
  }
  auto result = MixedGraph::from_marks(GraphClass::Mpdag, names, std::move(work.marks), MixedGraph::Check::Structural);
  return result;
}

Pdag working_copy(const MixedGraph& g) {
  if (g.graph_class() == GraphClass::Pag) {
    throw GraphError(GraphError::Kind::WrongClass, "Meek closure needs a partially directed graph, got a PAG");
  }
  return Pdag{g.size(), g.raw_marks()};
}

}  // namespace

MixedGraph apply_meek_closure(const MixedGraph& pdag) {
  try {
    return close(pdag.names(), working_copy(pdag));
  } catch (const GraphError& e) {
    if (e.kind() == GraphError::Kind::DirectedCycle) {
      throw GraphError(GraphError::Kind::DirectedCycle, "Meek closure produced a directed cycle (inconsistent orientations)");
    }
    throw;
  }
}

MixedGraph cpdag(const MixedGraph& dag) {
  if (dag.graph_class() != GraphClass::Dag) throw GraphError(GraphError::Kind::WrongClass, "cpdag needs a DAG");
  const std::size_t n = dag.size();
  Pdag work{n, std::vector<EdgeMark>(n * n, EdgeMark::None)};
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v : dag.neighbors(u)) work.marks[u * n + v] = EdgeMark::Tail;
  }
  for (NodeIndex c = 0; c < n; ++c) {
    for (NodeIndex a : dag.neighbors(c)) {
      for (NodeIndex b : dag.neighbors(c)) {
        if (a < b && dag.directed(a, c) && dag.directed(b, c) && !dag.adjacent(a, b)) {
          work.orient(a, c);
          work.orient(b, c);
        }
      }
    }
  }
  return close(dag.names(), std::move(work));
}

MixedGraph add_background_knowledge(const MixedGraph& mpdag,
                                    const std::vector<std::pair<NodeIndex, NodeIndex>>& orientations) {
  Pdag work = working_copy(mpdag);
  for (auto [u, v] : orientations) {
    if (work.directed(u, v)) continue;
    if (!work.undirected(u, v)) {
      throw GraphError(GraphError::Kind::IllegalMark, "background knowledge contradicts edge " + mpdag.name(u) +
                                                          " - " + mpdag.name(v));
    }
    work.orient(u, v);
  }
  return apply_meek_closure(MixedGraph::from_marks(GraphClass::Mpdag, mpdag.names(), std::move(work.marks),
                                                   MixedGraph::Check::Structural));
}

}  // namespace cadjust
