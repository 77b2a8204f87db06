#include "cadjust/transforms.hpp"

namespace cadjust {

void UndirectedGraph::add_edge(NodeIndex u, NodeIndex v) {
  if (u == v) return;
  adj_[u * n_ + v] = true;
  adj_[v * n_ + u] = true;
}

std::size_t UndirectedGraph::edge_count() const { return edges().size(); }

std::vector<std::pair<NodeIndex, NodeIndex>> UndirectedGraph::edges() const {
  std::vector<std::pair<NodeIndex, NodeIndex>> out;
  for (NodeIndex u = 0; u < n_; ++u) {
    for (NodeIndex v = u + 1; v < n_; ++v) {
      if (adjacent(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

namespace {

void require_dag(const MixedGraph& g, const char* op) {
  if (g.graph_class() != GraphClass::Dag) {
    throw GraphError(GraphError::Kind::WrongClass, std::string(op) + " needs a DAG");
  }
}

template <typename Drop>
MixedGraph without_edges(const MixedGraph& g, Drop drop) {
  const std::size_t n = g.size();
  std::vector<EdgeMark> marks = g.raw_marks();
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v : g.neighbors(u)) {
      if (g.directed(u, v) && drop(u, v)) {
        marks[u * n + v] = EdgeMark::None;
        marks[v * n + u] = EdgeMark::None;
      }
    }
  }
  return MixedGraph::from_marks(g.graph_class(), g.names(), std::move(marks), MixedGraph::Check::Structural);
}

}  // namespace

MixedGraph induced_subgraph(const MixedGraph& g, const NodeSet& keep) {
  if (keep.universe() != g.size()) throw QueryError("node set does not belong to this graph");
  const auto kept = keep.to_vector();
  const std::size_t m = kept.size();
  std::vector<std::string> names;
  names.reserve(m);
  for (NodeIndex v : kept) names.push_back(g.name(v));
  std::vector<EdgeMark> marks(m * m, EdgeMark::None);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) marks[i * m + j] = g.mark(kept[i], kept[j]);
  }
  return MixedGraph::from_marks(g.graph_class(), std::move(names), std::move(marks), MixedGraph::Check::Structural);
}

UndirectedGraph moral_graph(const MixedGraph& dag) {
  require_dag(dag, "moral_graph");
  const std::size_t n = dag.size();
  UndirectedGraph out(n);
  for (NodeIndex c = 0; c < n; ++c) {
    std::vector<NodeIndex> parents;
    for (NodeIndex u : dag.neighbors(c)) {
      out.add_edge(u, c);
      if (dag.directed(u, c)) parents.push_back(u);
    }
    for (std::size_t i = 0; i < parents.size(); ++i) {
      for (std::size_t j = i + 1; j < parents.size(); ++j) out.add_edge(parents[i], parents[j]);
    }
  }
  return out;
}

MixedGraph proper_backdoor_graph(const MixedGraph& dag, const NodeSet& x, const NodeSet& y) {
  require_dag(dag, "proper_backdoor_graph");
  require_disjoint(dag, {&x, &y});
  // Nodes outside X with a directed path to Y that avoids X.
  NodeSet reaches_y = y;
  std::vector<NodeIndex> stack = y.to_vector();
  while (!stack.empty()) {
    const NodeIndex v = stack.back();
    stack.pop_back();
    for (NodeIndex u : dag.neighbors(v)) {
      if (dag.directed(u, v) && !x.contains(u) && !reaches_y.contains(u)) {
        reaches_y.insert(u);
        stack.push_back(u);
      }
    }
  }
  return without_edges(dag, [&](NodeIndex u, NodeIndex v) { return x.contains(u) && reaches_y.contains(v); });
}

MixedGraph delete_edges_into(const MixedGraph& dag, const NodeSet& w) {
  require_dag(dag, "delete_edges_into");
  return without_edges(dag, [&](NodeIndex, NodeIndex v) { return w.contains(v); });
}

MixedGraph delete_edges_out_of(const MixedGraph& dag, const NodeSet& w) {
  require_dag(dag, "delete_edges_out_of");
  return without_edges(dag, [&](NodeIndex u, NodeIndex) { return w.contains(u); });
}

}  // namespace cadjust
