#include "cadjust/construct.hpp"

#include "cadjust/reachability.hpp"

namespace cadjust {

std::string_view to_string(SetKind k) {
  switch (k) {
    case SetKind::ParentSet:
      return "parent";
    case SetKind::Adjust:
      return "adjust";
    case SetKind::OSet:
      return "oset";
    case SetKind::AdjustPag:
      return "adjust-pag";
  }
  return "?";
}

namespace {

void require_class(const MixedGraph& g, bool pag) {
  const bool is_pag = g.graph_class() == GraphClass::Pag;
  if (is_pag != pag) {
    throw PreconditionError(pag ? "this construction needs a PAG" : "this construction needs a DAG or MPDAG");
  }
}

void require_criterion_scope(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& z) {
  if (auto r = check_applicability(g, x, y, z); !r.satisfied()) {
    throw PreconditionError("Z contains a possible descendant of X: " + g.name(*r.witness_node));
  }
  if (auto r = check_amenability(g, x, y); !r.satisfied()) {
    throw PreconditionError("not amenable: " + path_to_string(g, r.witness_path->nodes));
  }
}

ConstructedSet finish(const MixedGraph& g, SetKind kind, NodeSet members, const NodeSet& x, const NodeSet& y,
                      const NodeSet& z) {
  ConstructedSet out;
  out.kind = kind;
  out.check = check_conditional_adjustment(g, Query{x, y, z, members});
  out.members = std::move(members);
  if (!out.check.satisfied()) {
    out.preconditions_met = false;
    out.reasons.emplace_back("no conditional adjustment set exists");
  }
  return out;
}

}  // namespace

ConstructedSet parent_adjustment(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& z) {
  require_class(g, false);
  require_disjoint(g, {&x, &y, &z});
  if (x.size() != 1) throw PreconditionError("the parent set needs exactly one treatment node");
  require_criterion_scope(g, x, y, z);
  const NodeSet pa = parents(g, x);
  if (const NodeSet hit = pa & y; !hit.empty()) {
    throw PreconditionError("Y contains a parent of X: " + g.name(*hit.first()));
  }
  return finish(g, SetKind::ParentSet, pa - z, x, y, z);
}

ConstructedSet adjust_set_mpdag(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& z) {
  require_class(g, false);
  require_disjoint(g, {&x, &y, &z});
  require_criterion_scope(g, x, y, z);
  return finish(g, SetKind::Adjust, adjust_formula(g, x, y, z), x, y, z);
}

ConstructedSet o_set(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& z) {
  require_class(g, false);
  require_disjoint(g, {&x, &y, &z});
  require_criterion_scope(g, x, y, z);
  if (const NodeSet missing = y - possible_descendants(g, x); !missing.empty()) {
    throw PreconditionError("Y is not within PossDe(X): " + g.name(*missing.first()));
  }
  const NodeSet members =
      parents(g, possible_mediators(g, x, y)) - (forbidden_set(g, x, y) | x | y | z);
  return finish(g, SetKind::OSet, members, x, y, z);
}

ConstructedSet adjust_set_pag(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& z) {
  require_class(g, true);
  require_disjoint(g, {&x, &y, &z});
  require_criterion_scope(g, x, y, z);
  return finish(g, SetKind::AdjustPag, adjust_formula(g, x, y, z), x, y, z);
}

ConstructedSet apply_exclusion(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& z,
                               ConstructedSet set, const NodeSet& exclude) {
  if (!set.members.intersects(exclude)) return set;
  ConstructedSet out = std::move(set);
  out.members -= exclude;
  out.check = check_conditional_adjustment(g, Query{x, y, z, out.members});
  if (!out.check.satisfied()) {
    out.preconditions_met = false;
    out.reasons.emplace_back("excluded nodes are needed for adjustment");
  }
  return out;
}

}  // namespace cadjust
