#pragma once

#include <string_view>

#include "cadjust/graph.hpp"

namespace cadjust {

enum class Relation { Pa, PossPa, An, De, PossAn, PossDe };

std::string_view to_string(Relation r);

/// Parents of the set via -> edges, with W itself removed.
NodeSet parents(const MixedGraph& g, const NodeSet& w);

/// Nodes outside W joined to W by an edge without an arrowhead at the node
/// (->, --, o->, o-o read from the node's side).
NodeSet possible_parents(const MixedGraph& g, const NodeSet& w);

/// Reflexive closures over -> edges.
NodeSet ancestors(const MixedGraph& g, const NodeSet& w);
NodeSet descendants(const MixedGraph& g, const NodeSet& w);

/// Reflexive closures over possibly directed paths. The search follows
/// unshielded walks whose edges carry no arrowhead pointing back.
NodeSet possible_ancestors(const MixedGraph& g, const NodeSet& w);
NodeSet possible_descendants(const MixedGraph& g, const NodeSet& w);

NodeSet relation(const MixedGraph& g, Relation r, const NodeSet& w);

/// Nodes outside X on proper possibly causal paths from X to Y (Y included
/// when reachable).
NodeSet possible_mediators(const MixedGraph& g, const NodeSet& x, const NodeSet& y);

/// PossDe of the possible mediators.
NodeSet forbidden_set(const MixedGraph& g, const NodeSet& x, const NodeSet& y);

}  // namespace cadjust
