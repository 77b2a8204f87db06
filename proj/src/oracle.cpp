#include "cadjust/oracle.hpp"

#include <functional>

#include "cadjust/transforms.hpp"

namespace cadjust {

namespace {

bool new_collider_at(const MixedGraph& g, const std::vector<EdgeMark>& marks, NodeIndex tail, NodeIndex head) {
  const std::size_t n = g.size();
  for (NodeIndex w : g.neighbors(head)) {
    if (w == tail || g.adjacent(w, tail)) continue;
    const bool w_into_head = marks[w * n + head] == EdgeMark::Arrow && marks[head * n + w] == EdgeMark::Tail;
    if (w_into_head && !(g.directed(tail, head) && g.directed(w, head))) return true;
  }
  return false;
}

bool cyclic(const MixedGraph& g, const std::vector<EdgeMark>& marks) {
  const std::size_t n = g.size();
  std::vector<int> state(n, 0);
  std::function<bool(NodeIndex)> visit = [&](NodeIndex u) {
    state[u] = 1;
    for (NodeIndex v : g.neighbors(u)) {
      if (marks[u * n + v] != EdgeMark::Arrow || marks[v * n + u] != EdgeMark::Tail) continue;
      if (state[v] == 1 || (state[v] == 0 && visit(v))) return true;
    }
    state[u] = 2;
    return false;
  };
  for (NodeIndex u = 0; u < n; ++u) {
    if (state[u] == 0 && visit(u)) return true;
  }
  return false;
}

// Calls visit for every simple path starting in `from` (length >= 2).
void for_each_simple_path(const MixedGraph& g, const NodeSet& from,
                          const std::function<void(const std::vector<NodeIndex>&)>& visit) {
  std::vector<NodeIndex> path;
  std::vector<bool> on(g.size(), false);
  std::function<void()> extend = [&]() {
    for (NodeIndex t : g.neighbors(path.back())) {
      if (on[t]) continue;
      path.push_back(t);
      on[t] = true;
      visit(path);
      extend();
      on[t] = false;
      path.pop_back();
    }
  };
  for (NodeIndex s : from) {
    path.assign(1, s);
    on[s] = true;
    extend();
    on[s] = false;
  }
}

}  // namespace

DagClass enumerate_dag_extensions(const MixedGraph& g, const EnumerationOptions& opts) {
  if (g.graph_class() == GraphClass::Pag) throw GraphError(GraphError::Kind::WrongClass, "cannot enumerate a PAG");
  std::vector<Edge> undirected;
  for (const Edge& e : g.edges()) {
    if (g.undirected(e.a, e.b)) undirected.push_back(e);
  }
  if (undirected.size() > opts.max_undirected) {
    throw EnumerationCapError(std::to_string(undirected.size()) + " undirected edges exceed the cap of " +
                              std::to_string(opts.max_undirected));
  }
  DagClass out{g, {}};
  const std::size_t n = g.size();
  std::vector<EdgeMark> marks = g.raw_marks();
  std::function<void(std::size_t)> branch = [&](std::size_t k) {
    if (k == undirected.size()) {
      out.members.push_back(MixedGraph::from_marks(GraphClass::Dag, g.names(), marks));
      return;
    }
    const Edge& e = undirected[k];
    for (int flip = 0; flip < 2; ++flip) {
      const NodeIndex tail = flip ? e.b : e.a;
      const NodeIndex head = flip ? e.a : e.b;
      marks[tail * n + head] = EdgeMark::Arrow;
      marks[head * n + tail] = EdgeMark::Tail;
      const bool ok = !cyclic(g, marks) && (opts.literal || !new_collider_at(g, marks, tail, head));
      if (ok) branch(k + 1);
      marks[tail * n + head] = EdgeMark::Tail;
    }
  };
  branch(0);
  return out;
}

bool dsep_moral(const MixedGraph& dag, const NodeSet& a, const NodeSet& b, const NodeSet& c) {
  if (dag.graph_class() != GraphClass::Dag) throw GraphError(GraphError::Kind::WrongClass, "dsep_moral needs a DAG");
  require_disjoint(dag, {&a, &b, &c});
  NodeSet keep = a | b | c;
  std::vector<NodeIndex> stack = keep.to_vector();
  while (!stack.empty()) {
    const NodeIndex v = stack.back();
    stack.pop_back();
    for (NodeIndex u : dag.neighbors(v)) {
      if (dag.directed(u, v) && !keep.contains(u)) {
        keep.insert(u);
        stack.push_back(u);
      }
    }
  }
  const auto kept = keep.to_vector();
  const UndirectedGraph moral = moral_graph(induced_subgraph(dag, keep));
  std::vector<bool> in_c(kept.size()), in_b(kept.size()), seen(kept.size(), false);
  std::vector<std::size_t> frontier;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    in_c[i] = c.contains(kept[i]);
    in_b[i] = b.contains(kept[i]);
    if (a.contains(kept[i])) {
      seen[i] = true;
      frontier.push_back(i);
    }
  }
  while (!frontier.empty()) {
    const std::size_t i = frontier.back();
    frontier.pop_back();
    if (in_b[i]) return false;
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (!seen[j] && !in_c[j] && moral.adjacent(i, j)) {
        seen[j] = true;
        frontier.push_back(j);
      }
    }
  }
  return true;
}

MixedGraph brute_force_proper_backdoor_graph(const MixedGraph& dag, const NodeSet& x, const NodeSet& y) {
  if (dag.graph_class() != GraphClass::Dag) throw GraphError(GraphError::Kind::WrongClass, "needs a DAG");
  require_disjoint(dag, {&x, &y});
  const std::size_t n = dag.size();
  std::vector<EdgeMark> marks = dag.raw_marks();
  for_each_simple_path(dag, x, [&](const std::vector<NodeIndex>& p) {
    if (!y.contains(p.back())) return;
    for (std::size_t i = 1; i < p.size(); ++i) {
      if (x.contains(p[i]) || !dag.directed(p[i - 1], p[i])) return;
    }
    marks[p[0] * n + p[1]] = EdgeMark::None;
    marks[p[1] * n + p[0]] = EdgeMark::None;
  });
  return MixedGraph::from_marks(GraphClass::Dag, dag.names(), std::move(marks));
}

bool adjustment_via_pbd(const MixedGraph& dag, const NodeSet& x, const NodeSet& y, const NodeSet& w) {
  return dsep_moral(brute_force_proper_backdoor_graph(dag, x, y), x, y, w);
}

bool strict_possibly_causal(const MixedGraph& g, const std::vector<NodeIndex>& path) {
  for (std::size_t j = 1; j < path.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (g.adjacent(path[i], path[j]) && g.mark(path[j], path[i]) == EdgeMark::Arrow) return false;
    }
  }
  return true;
}

NodeSet strict_possible_descendants(const MixedGraph& g, const NodeSet& w) {
  NodeSet out = w;
  for_each_simple_path(g, w, [&](const std::vector<NodeIndex>& p) {
    if (strict_possibly_causal(g, p)) out.insert(p.back());
  });
  return out;
}

NodeSet strict_possible_ancestors(const MixedGraph& g, const NodeSet& w) {
  NodeSet out = w;
  for_each_simple_path(g, w, [&](const std::vector<NodeIndex>& p) {
    const std::vector<NodeIndex> reversed(p.rbegin(), p.rend());
    if (strict_possibly_causal(g, reversed)) out.insert(p.back());
  });
  return out;
}

NodeSet strict_possible_mediators(const MixedGraph& g, const NodeSet& x, const NodeSet& y) {
  require_disjoint(g, {&x, &y});
  NodeSet out = g.empty_set();
  for_each_simple_path(g, x, [&](const std::vector<NodeIndex>& p) {
    if (!y.contains(p.back()) || !strict_possibly_causal(g, p)) return;
    for (std::size_t i = 1; i < p.size(); ++i) {
      if (x.contains(p[i])) return;
    }
    for (std::size_t i = 1; i < p.size(); ++i) out.insert(p[i]);
  });
  return out;
}

NodeSet strict_forbidden_set(const MixedGraph& g, const NodeSet& x, const NodeSet& y) {
  return strict_possible_descendants(g, strict_possible_mediators(g, x, y));
}

bool dag_criterion_oracle(const MixedGraph& dag, const Query& q) {
  const NodeSet w = q.s | q.z;
  if (w.intersects(strict_forbidden_set(dag, q.x, q.y))) return false;
  return adjustment_via_pbd(dag, q.x, q.y, w);
}

ClassVerification verify_criterion_across_class(const MixedGraph& g, const Query& q,
                                                const EnumerationOptions& opts) {
  if (auto r = check_applicability(g, q.x, q.y, q.z); !r.satisfied()) {
    throw PreconditionError("Z contains a possible descendant of X: " + g.name(*r.witness_node));
  }
  if (auto r = check_amenability(g, q.x, q.y); !r.satisfied()) {
    throw PreconditionError("the query is not amenable");
  }
  ClassVerification out;
  out.graph_verdict = check_conditional_adjustment(g, q).verdict;
  const bool expected = out.graph_verdict == Verdict::Satisfied;
  for (const MixedGraph& d : enumerate_dag_extensions(g, opts).members) {
    const bool ok = dag_criterion_oracle(d, q);
    out.member_satisfied.push_back(ok);
    if (ok != expected) ++out.discrepancies;
  }
  return out;
}

MixedGraph canonical_dag(const MixedGraph& mag) {
  std::vector<std::string> nodes = mag.names();
  std::vector<NamedEdge> edges;
  for (const Edge& e : mag.edges()) {
    const std::string& a = mag.name(e.a);
    const std::string& b = mag.name(e.b);
    if (mag.directed(e.a, e.b)) {
      edges.push_back({a, b});
    } else if (mag.directed(e.b, e.a)) {
      edges.push_back({b, a});
    } else if (mag.bidirected(e.a, e.b)) {
      const std::string latent = "L_" + a + "_" + b;
      if (mag.find(latent)) {
        throw GraphError(GraphError::Kind::DuplicateNode, "latent name '" + latent + "' is already a node");
      }
      edges.push_back({latent, a});
      edges.push_back({latent, b});
    } else {
      throw GraphError(GraphError::Kind::IllegalMark, "canonical DAG needs only -> and <-> edges");
    }
  }
  // Ancestral: no directed cycle, and no A <-> B with A an ancestor of B.
  mag.with_class(GraphClass::Pag, MixedGraph::Check::Structural);
  return MixedGraph::create(GraphClass::Dag, std::move(nodes), edges);
}

}  // namespace cadjust
