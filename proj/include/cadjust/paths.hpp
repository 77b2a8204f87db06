#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cadjust/graph.hpp"

namespace cadjust {

enum class NodeStatus { Endpoint, Collider, DefiniteNonCollider, NonDefinite };

std::string_view to_string(NodeStatus s);

/// A path of g with the status of every node (endpoints tagged Endpoint).
struct PathWitness {
  std::vector<NodeIndex> nodes;
  std::vector<NodeStatus> statuses;

  friend bool operator==(const PathWitness&, const PathWitness&) = default;
};

enum class PathFilter { All, NonCausal, PossiblyCausal };

struct PathClass {
  bool possibly_causal = false;
  bool definite_status = false;
  bool proper = false;
};

struct SeparationVerdict {
  bool separated = true;
  std::optional<PathWitness> witness;
};

/// Status of `node` between its path neighbours `prev` and `next`.
NodeStatus node_status(const MixedGraph& g, NodeIndex prev, NodeIndex node, NodeIndex next);

/// True iff the nodes are distinct and consecutive nodes are adjacent.
bool is_path(const MixedGraph& g, const std::vector<NodeIndex>& nodes);

/// Derives statuses; throws QueryError if `nodes` is not a path of g.
PathWitness make_witness(const MixedGraph& g, const std::vector<NodeIndex>& nodes);

bool is_definite_status(const PathWitness& p);

/// Strict definition: no pair i < j on the path with an arrowhead at the
/// earlier node, checked over all node pairs (not only consecutive ones).
bool is_possibly_causal(const MixedGraph& g, const std::vector<NodeIndex>& nodes);

/// Properness is relative to X: only the first node lies in X.
PathClass classify_path(const MixedGraph& g, const std::vector<NodeIndex>& nodes, const NodeSet& x);

/// All proper definite-status paths from X to Y in canonical (lexicographic)
/// order. Paths may pass through nodes of Y.
std::vector<PathWitness> enumerate_proper_definite_status_paths(const MixedGraph& g, const NodeSet& x,
                                                                const NodeSet& y, PathFilter filter);

/// Throws QueryError if p has a non-definite interior node.
bool is_blocked(const MixedGraph& g, const PathWitness& p, const NodeSet& c);

/// First open proper definite-status path from X to Y given C that passes
/// the filter, in canonical order.
std::optional<PathWitness> find_open_path(const MixedGraph& g, const NodeSet& x, const NodeSet& y,
                                          const NodeSet& c, PathFilter filter);

/// First proper possibly causal path from X to Y (definite status not
/// required) whose first edge x-v satisfies `first_edge(x, v)`.
std::optional<PathWitness> find_possibly_causal_path(const MixedGraph& g, const NodeSet& x, const NodeSet& y,
                                                     const std::function<bool(NodeIndex, NodeIndex)>& first_edge);

/// Visits every proper possibly causal path from X to Y in canonical order;
/// the visitor returns false to stop.
void for_each_possibly_causal_path(const MixedGraph& g, const NodeSet& x, const NodeSet& y,
                                   const std::function<bool(const std::vector<NodeIndex>&)>& visit);

/// Every such path, in canonical order.
std::vector<PathWitness> enumerate_possibly_causal_paths(const MixedGraph& g, const NodeSet& x, const NodeSet& y,
                                                         const std::function<bool(NodeIndex, NodeIndex)>& first_edge);

/// d-separation for DAGs, m-separation over definite-status paths otherwise.
SeparationVerdict m_separated(const MixedGraph& g, const NodeSet& a, const NodeSet& b, const NodeSet& c);

/// Visibility of the directed PAG edge from -> to.
bool is_visible(const MixedGraph& g, NodeIndex from, NodeIndex to);

/// DAG paths from X to Y whose first edge points into X.
std::vector<PathWitness> backdoor_paths(const MixedGraph& dag, const NodeSet& x, const NodeSet& y, bool proper);

/// First proper back-door path open given C, if any.
std::optional<PathWitness> find_open_backdoor_path(const MixedGraph& dag, const NodeSet& x, const NodeSet& y,
                                                   const NodeSet& c);

/// Renders a path with its edges, e.g. "X <- V2 -> Y".
std::string path_to_string(const MixedGraph& g, const std::vector<NodeIndex>& nodes);

}  // namespace cadjust
