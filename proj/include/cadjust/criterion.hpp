#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>

#include "cadjust/graph.hpp"
#include "cadjust/paths.hpp"

namespace cadjust {

/// An identification question: effect of X on Y within strata of Z,
/// adjusting for S. Sets must be pairwise disjoint.
struct Query {
  NodeSet x;
  NodeSet y;
  NodeSet z;
  NodeSet s;
};

enum class Verdict { Satisfied, Violated, Inapplicable };
enum class Clause { ForbiddenHit, OpenPath, NotAmenable, ZInPossDe };

std::string_view to_string(Verdict v);
std::string_view to_string(Clause c);

struct CriterionReport {
  Verdict verdict = Verdict::Satisfied;
  std::optional<Clause> clause;
  std::optional<NodeIndex> witness_node;
  std::optional<PathWitness> witness_path;

  bool satisfied() const { return verdict == Verdict::Satisfied; }
};

/// A named precondition of an operation does not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inapplicable/ZInPossDe with the first offending node, else Satisfied.
/// DAGs use De, MPDAGs and PAGs use PossDe.
CriterionReport check_applicability(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& z);

/// Violated/NotAmenable with a proper possibly causal witness path whose
/// first edge is undirected (MPDAG) or not a visible edge out of X (PAG).
CriterionReport check_amenability(const MixedGraph& g, const NodeSet& x, const NodeSet& y);

CriterionReport check_conditional_adjustment(const MixedGraph& g, const Query& q);

/// Adjustment criterion for W (no conditioning set).
CriterionReport check_unconditional_adjustment(const MixedGraph& g, const NodeSet& x, const NodeSet& y,
                                               const NodeSet& w);

/// Clause (b) alone: the first open proper non-causal definite-status path
/// given C, if any.
std::optional<PathWitness> open_noncausal_path(const MixedGraph& g, const NodeSet& x, const NodeSet& y,
                                               const NodeSet& c);

/// Conditional back-door criterion on a DAG. Throws PreconditionError when
/// Z meets De(X). A hit of S on De(X) is reported as ForbiddenHit.
CriterionReport check_conditional_backdoor(const MixedGraph& dag, const Query& q);

/// [PossAn(X u Y) u An(Z)] \ [Forb u X u Y u Z] for DAGs and MPDAGs, with
/// PossAn(Z) in place of An(Z) for PAGs.
NodeSet adjust_formula(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& z);

struct ExistsResult {
  std::optional<NodeSet> set;
  CriterionReport report;
};

/// Tests the Adjust set only. When it fails because a path stays open, the
/// report names the forbidden non-collider that would be needed to block it.
ExistsResult exists_conditional_adjustment(const MixedGraph& g, const NodeSet& x, const NodeSet& y,
                                           const NodeSet& z);

}  // namespace cadjust
