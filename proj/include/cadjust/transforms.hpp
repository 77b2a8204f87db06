#pragma once

#include <utility>
#include <vector>

#include "cadjust/graph.hpp"

namespace cadjust {

/// Undirected graph over the node indices of a source graph.
class UndirectedGraph {
 public:
  explicit UndirectedGraph(std::size_t n) : n_(n), adj_(n * n, false) {}

  std::size_t size() const { return n_; }
  void add_edge(NodeIndex u, NodeIndex v);
  bool adjacent(NodeIndex u, NodeIndex v) const { return adj_[u * n_ + v]; }
  std::size_t edge_count() const;
  /// Edges (u, v) with u < v in canonical order.
  std::vector<std::pair<NodeIndex, NodeIndex>> edges() const;

 private:
  std::size_t n_;
  std::vector<bool> adj_;
};

/// Keeps the nodes in `keep` and the edges between them; class is preserved.
/// Induced subgraphs of MPDAGs are tagged MPDAG without re-checking closure.
MixedGraph induced_subgraph(const MixedGraph& g, const NodeSet& keep);

/// Marries the parents of every collider and drops orientations.
UndirectedGraph moral_graph(const MixedGraph& dag);

/// Removes the first edge of every proper causal path from X to Y.
MixedGraph proper_backdoor_graph(const MixedGraph& dag, const NodeSet& x, const NodeSet& y);

/// Removes every edge with its head in W (the graph with edges into W cut).
MixedGraph delete_edges_into(const MixedGraph& dag, const NodeSet& w);

/// Removes every edge with its tail in W.
MixedGraph delete_edges_out_of(const MixedGraph& dag, const NodeSet& w);

}  // namespace cadjust
