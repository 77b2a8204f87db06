#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cadjust/criterion.hpp"

namespace cadjust {

enum class SetKind { ParentSet, Adjust, OSet, AdjustPag };

std::string_view to_string(SetKind k);

struct ConstructedSet {
  SetKind kind = SetKind::Adjust;
  NodeSet members;
  bool preconditions_met = true;
  std::vector<std::string> reasons;
  /// Criterion verdict for (X, Y, Z, members).
  CriterionReport check;
};

/// Pa(X) \ Z for a single treatment node. Throws PreconditionError when X is
/// not a singleton, Z meets PossDe(X), g is not amenable, or Y meets Pa(X).
ConstructedSet parent_adjustment(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& z);

/// [PossAn(X u Y) u An(Z)] \ [Forb u X u Y u Z] on a DAG or MPDAG.
ConstructedSet adjust_set_mpdag(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& z);

/// Pa(PossMediators(X, Y)) \ [Forb u X u Y u Z]; additionally needs Y within PossDe(X).
ConstructedSet o_set(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& z);

/// [PossAn(X u Y) u PossAn(Z)] \ [Forb u X u Y u Z] on a PAG.
ConstructedSet adjust_set_pag(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& z);

/// Drops the excluded nodes and re-checks the criterion.
ConstructedSet apply_exclusion(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& z,
                               ConstructedSet set, const NodeSet& exclude);

}  // namespace cadjust
