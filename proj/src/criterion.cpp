#include "cadjust/criterion.hpp"

#include "cadjust/reachability.hpp"

namespace cadjust {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Satisfied:
      return "satisfied";
    case Verdict::Violated:
      return "violated";
    case Verdict::Inapplicable:
      return "inapplicable";
  }
  return "?";
}

std::string_view to_string(Clause c) {
  switch (c) {
    case Clause::ForbiddenHit:
      return "forbidden-hit";
    case Clause::OpenPath:
      return "open-path";
    case Clause::NotAmenable:
      return "not-amenable";
    case Clause::ZInPossDe:
      return "z-in-possde";
  }
  return "?";
}

namespace {

CriterionReport node_report(Verdict v, Clause c, NodeIndex node) {
  CriterionReport r;
  r.verdict = v;
  r.clause = c;
  r.witness_node = node;
  return r;
}

CriterionReport path_report(Verdict v, Clause c, PathWitness path) {
  CriterionReport r;
  r.verdict = v;
  r.clause = c;
  r.witness_path = std::move(path);
  return r;
}

// Clauses shared by the conditional and unconditional criteria.
CriterionReport forb_and_blocking(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& s,
                                  const NodeSet& blockers) {
  const NodeSet hit = s & forbidden_set(g, x, y);
  if (!hit.empty()) return node_report(Verdict::Violated, Clause::ForbiddenHit, *hit.first());
  if (auto open = open_noncausal_path(g, x, y, blockers)) {
    return path_report(Verdict::Violated, Clause::OpenPath, std::move(*open));
  }
  return {};
}

}  // namespace

CriterionReport check_applicability(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& z) {
  require_disjoint(g, {&x, &y, &z});
  const NodeSet hit = z & possible_descendants(g, x);
  if (!hit.empty()) return node_report(Verdict::Inapplicable, Clause::ZInPossDe, *hit.first());
  return {};
}

CriterionReport check_amenability(const MixedGraph& g, const NodeSet& x, const NodeSet& y) {
  require_disjoint(g, {&x, &y});
  std::optional<PathWitness> witness;
  switch (g.graph_class()) {
    case GraphClass::Dag:
      break;
    case GraphClass::Mpdag:
      witness = find_possibly_causal_path(g, x, y, [&](NodeIndex a, NodeIndex b) { return g.undirected(a, b); });
      break;
    case GraphClass::Pag:
      witness = find_possibly_causal_path(
          g, x, y, [&](NodeIndex a, NodeIndex b) { return !g.directed(a, b) || !is_visible(g, a, b); });
      break;
  }
  if (witness) return path_report(Verdict::Violated, Clause::NotAmenable, std::move(*witness));
  return {};
}

CriterionReport check_conditional_adjustment(const MixedGraph& g, const Query& q) {
  require_disjoint(g, {&q.x, &q.y, &q.z, &q.s});
  if (auto r = check_applicability(g, q.x, q.y, q.z); !r.satisfied()) return r;
  if (auto r = check_amenability(g, q.x, q.y); !r.satisfied()) return r;
  return forb_and_blocking(g, q.x, q.y, q.s, q.s | q.z);
}

CriterionReport check_unconditional_adjustment(const MixedGraph& g, const NodeSet& x, const NodeSet& y,
                                               const NodeSet& w) {
  require_disjoint(g, {&x, &y, &w});
  if (auto r = check_amenability(g, x, y); !r.satisfied()) return r;
  return forb_and_blocking(g, x, y, w, w);
}

std::optional<PathWitness> open_noncausal_path(const MixedGraph& g, const NodeSet& x, const NodeSet& y,
                                               const NodeSet& c) {
  return find_open_path(g, x, y, c, PathFilter::NonCausal);
}

CriterionReport check_conditional_backdoor(const MixedGraph& dag, const Query& q) {
  if (dag.graph_class() != GraphClass::Dag) {
    throw GraphError(GraphError::Kind::WrongClass, "the conditional back-door criterion needs a DAG");
  }
  require_disjoint(dag, {&q.x, &q.y, &q.z, &q.s});
  const NodeSet de_x = descendants(dag, q.x);
  if (const NodeSet hit = q.z & de_x; !hit.empty()) {
    throw PreconditionError("Z contains a descendant of X: " + dag.name(*hit.first()));
  }
  if (const NodeSet hit = q.s & de_x; !hit.empty()) {
    return node_report(Verdict::Violated, Clause::ForbiddenHit, *hit.first());
  }
  if (auto open = find_open_backdoor_path(dag, q.x, q.y, q.s | q.z)) {
    return path_report(Verdict::Violated, Clause::OpenPath, std::move(*open));
  }
  return {};
}

NodeSet adjust_formula(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& z) {
  require_disjoint(g, {&x, &y, &z});
  const NodeSet from_z = g.graph_class() == GraphClass::Pag ? possible_ancestors(g, z) : ancestors(g, z);
  const NodeSet candidates = possible_ancestors(g, x | y) | from_z;
  return candidates - (forbidden_set(g, x, y) | x | y | z);
}

ExistsResult exists_conditional_adjustment(const MixedGraph& g, const NodeSet& x, const NodeSet& y,
                                           const NodeSet& z) {
  ExistsResult out;
  if (out.report = check_applicability(g, x, y, z); !out.report.satisfied()) return out;
  if (out.report = check_amenability(g, x, y); !out.report.satisfied()) return out;
  const NodeSet adjust = adjust_formula(g, x, y, z);
  out.report = check_conditional_adjustment(g, Query{x, y, z, adjust});
  if (out.report.satisfied()) {
    out.set = adjust;
  } else if (out.report.clause == Clause::OpenPath) {
    const NodeSet forb = forbidden_set(g, x, y);
    const PathWitness& p = *out.report.witness_path;
    for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
      if (p.statuses[i] == NodeStatus::DefiniteNonCollider && forb.contains(p.nodes[i])) {
        out.report.clause = Clause::ForbiddenHit;
        out.report.witness_node = p.nodes[i];
        break;
      }
    }
  }
  return out;
}

}  // namespace cadjust
