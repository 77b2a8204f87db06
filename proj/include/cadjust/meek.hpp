#pragma once

#include <utility>
#include <vector>

#include "cadjust/graph.hpp"

namespace cadjust {

/// Applies Meek's orientation rules R1-R4 to a partially directed graph (only
/// -> and -- edges) until nothing changes. The result is tagged MPDAG.
/// Throws GraphError(DirectedCycle) when the orientations are inconsistent.
MixedGraph apply_meek_closure(const MixedGraph& pdag);

/// CPDAG of a DAG: skeleton, unshielded colliders, then Meek closure.
MixedGraph cpdag(const MixedGraph& dag);

/// Orients each listed undirected edge (tail, head) and re-closes.
MixedGraph add_background_knowledge(const MixedGraph& mpdag,
                                    const std::vector<std::pair<NodeIndex, NodeIndex>>& orientations);

}  // namespace cadjust
