#include "cadjust/graph.hpp"

#include <algorithm>
#include <map>

#include "cadjust/meek.hpp"

namespace cadjust {

std::string_view to_string(GraphClass cls) {
  switch (cls) {
    case GraphClass::Dag:
      return "dag";
    case GraphClass::Mpdag:
      return "mpdag";
    case GraphClass::Pag:
      return "pag";
  }
  return "?";
}

std::optional<GraphClass> graph_class_from_token(std::string_view token) {
  if (token == "dag") return GraphClass::Dag;
  if (token == "mpdag") return GraphClass::Mpdag;
  if (token == "pag") return GraphClass::Pag;
  return std::nullopt;
}

bool is_valid_node_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

namespace {

bool edge_allowed(GraphClass cls, EdgeMark at_u, EdgeMark at_v) {
  auto is = [&](EdgeMark x, EdgeMark y) {
    return (at_u == x && at_v == y) || (at_u == y && at_v == x);
  };
  const bool directed = is(EdgeMark::Tail, EdgeMark::Arrow);
  switch (cls) {
    case GraphClass::Dag:
      return directed;
    case GraphClass::Mpdag:
      return directed || is(EdgeMark::Tail, EdgeMark::Tail);
    case GraphClass::Pag:
      return directed || is(EdgeMark::Arrow, EdgeMark::Arrow) || is(EdgeMark::Circle, EdgeMark::Arrow) ||
             is(EdgeMark::Circle, EdgeMark::Circle);
  }
  return false;
}

}  // namespace

MixedGraph MixedGraph::create(GraphClass cls, std::vector<std::string> nodes,
                              const std::vector<NamedEdge>& edges, Check check) {
  for (const auto& e : edges) {
    nodes.push_back(e.from);
    nodes.push_back(e.to);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (const auto& n : nodes) {
    if (!is_valid_node_name(n)) throw GraphError(GraphError::Kind::InvalidName, "invalid node name '" + n + "'");
  }

  const std::size_t n = nodes.size();
  std::map<std::string_view, NodeIndex> index;
  for (NodeIndex i = 0; i < n; ++i) index.emplace(nodes[i], i);

  std::vector<EdgeMark> marks(n * n, EdgeMark::None);
  for (const auto& e : edges) {
    const NodeIndex u = index.at(e.from);
    const NodeIndex v = index.at(e.to);
    if (u == v) throw GraphError(GraphError::Kind::SelfLoop, "self loop at '" + e.from + "'");
    if (marks[u * n + v] != EdgeMark::None) {
      throw GraphError(GraphError::Kind::DuplicateEdge, "duplicate edge between '" + e.from + "' and '" + e.to + "'");
    }
    if (e.mark_at_from == EdgeMark::None || e.mark_at_to == EdgeMark::None) {
      throw GraphError(GraphError::Kind::IllegalMark, "edge without endpoint marks");
    }
    marks[u * n + v] = e.mark_at_to;
    marks[v * n + u] = e.mark_at_from;
  }
  return from_marks(cls, std::move(nodes), std::move(marks), check);
}

MixedGraph MixedGraph::from_marks(GraphClass cls, std::vector<std::string> sorted_names,
                                  std::vector<EdgeMark> marks, Check check) {
  const std::size_t n = sorted_names.size();
  if (marks.size() != n * n) throw std::invalid_argument("mark matrix does not match node count");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(sorted_names[i - 1] < sorted_names[i])) {
      throw GraphError(GraphError::Kind::DuplicateNode, "node names must be unique and sorted: '" + sorted_names[i] + "'");
    }
  }
  for (NodeIndex u = 0; u < n; ++u) {
    if (marks[u * n + u] != EdgeMark::None) throw GraphError(GraphError::Kind::SelfLoop, "self loop");
    for (NodeIndex v = u + 1; v < n; ++v) {
      if ((marks[u * n + v] == EdgeMark::None) != (marks[v * n + u] == EdgeMark::None)) {
        throw GraphError(GraphError::Kind::IllegalMark, "edge with a single endpoint mark");
      }
    }
  }
  MixedGraph g;
  g.class_ = cls;
  g.names_ = std::move(sorted_names);
  g.marks_ = std::move(marks);
  g.build_adjacency();
  g.validate(check);
  return g;
}

void MixedGraph::build_adjacency() {
  const std::size_t n = size();
  adjacency_.assign(n, {});
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = 0; v < n; ++v) {
      if (marks_[u * n + v] != EdgeMark::None) adjacency_[u].push_back(v);
    }
  }
}

void MixedGraph::validate(Check check) const {
  const std::size_t n = size();
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v : adjacency_[u]) {
      if (v < u) continue;
      if (!edge_allowed(class_, mark(v, u), mark(u, v))) {
        throw GraphError(GraphError::Kind::IllegalMark, "edge " + names_[u] + " - " + names_[v] +
                                                            " not allowed in a " + std::string(to_string(class_)));
      }
    }
  }
  if (has_directed_cycle(*this)) throw GraphError(GraphError::Kind::DirectedCycle, "directed cycle");

  if (class_ == GraphClass::Pag) {
    // A <-> B with A an ancestor of B closes an almost directed cycle.
    std::vector<NodeSet> reach(n, NodeSet(n));
    for (NodeIndex v : topological_order(*this)) {
      reach[v].insert(v);
      for (NodeIndex w : adjacency_[v]) {
        if (directed(w, v)) reach[v] |= reach[w];
      }
    }
    for (NodeIndex u = 0; u < n; ++u) {
      for (NodeIndex v : adjacency_[u]) {
        if (bidirected(u, v) && reach[v].contains(u)) {
          throw GraphError(GraphError::Kind::AlmostDirectedCycle,
                           "almost directed cycle through " + names_[u] + " <-> " + names_[v]);
        }
      }
    }
  }

  if (class_ == GraphClass::Mpdag && check == Check::Full) {
    const MixedGraph closed = apply_meek_closure(*this);
    if (closed.marks_ != marks_) {
      for (NodeIndex u = 0; u < n; ++u) {
        for (NodeIndex v : adjacency_[u]) {
          if (undirected(u, v) && closed.directed(u, v)) {
            throw GraphError(GraphError::Kind::NotMeekClosed,
                             "not closed under Meek's rules: " + names_[u] + " -- " + names_[v] + " is forced to " +
                                 names_[u] + " -> " + names_[v]);
          }
        }
      }
      throw GraphError(GraphError::Kind::NotMeekClosed, "not closed under Meek's rules");
    }
  }
}

std::size_t MixedGraph::edge_count() const {
  std::size_t count = 0;
  for (const auto& adj : adjacency_) count += adj.size();
  return count / 2;
}

std::optional<NodeIndex> MixedGraph::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<NodeIndex>(it - names_.begin());
}

NodeIndex MixedGraph::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw GraphError(GraphError::Kind::UnknownNode, "unknown node '" + std::string(name) + "'");
}

NodeSet MixedGraph::node_set(const std::vector<std::string>& names) const {
  NodeSet s(size());
  for (const auto& n : names) s.insert(index(n));
  return s;
}

std::vector<std::string> MixedGraph::names_of(const NodeSet& set) const {
  std::vector<std::string> out;
  for (NodeIndex v : set) out.push_back(names_.at(v));
  return out;
}

std::vector<std::string> MixedGraph::names_of(const std::vector<NodeIndex>& seq) const {
  std::vector<std::string> out;
  out.reserve(seq.size());
  for (NodeIndex v : seq) out.push_back(names_.at(v));
  return out;
}

bool MixedGraph::undirected(NodeIndex u, NodeIndex v) const {
  const EdgeMark a = mark(v, u);
  const EdgeMark b = mark(u, v);
  return (a == EdgeMark::Tail && b == EdgeMark::Tail) || (a == EdgeMark::Circle && b == EdgeMark::Circle);
}

std::vector<Edge> MixedGraph::edges() const {
  std::vector<Edge> out;
  for (NodeIndex u = 0; u < size(); ++u) {
    for (NodeIndex v : adjacency_[u]) {
      if (u < v) out.push_back(Edge{u, v, mark(v, u), mark(u, v)});
    }
  }
  return out;
}

MixedGraph MixedGraph::with_class(GraphClass cls, Check check) const {
  return from_marks(cls, names_, marks_, check);
}

namespace {

// Kahn's algorithm over -> edges; returns fewer than n nodes on a cycle.
std::vector<NodeIndex> kahn_order(const MixedGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> indegree(n, 0);
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v : g.neighbors(u)) {
      if (g.directed(u, v)) ++indegree[v];
    }
  }
  // Smallest ready index first keeps the order deterministic.
  std::vector<NodeIndex> ready;
  for (NodeIndex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::vector<NodeIndex> order;
  order.reserve(n);
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end());
    const NodeIndex u = *it;
    ready.erase(it);
    order.push_back(u);
    for (NodeIndex v : g.neighbors(u)) {
      if (g.directed(u, v) && --indegree[v] == 0) ready.push_back(v);
    }
  }
  return order;
}

}  // namespace

std::vector<NodeIndex> topological_order(const MixedGraph& g) {
  auto order = kahn_order(g);
  if (order.size() != g.size()) throw GraphError(GraphError::Kind::DirectedCycle, "directed cycle");
  return order;
}

bool has_directed_cycle(const MixedGraph& g) { return kahn_order(g).size() != g.size(); }

void require_disjoint(const MixedGraph& g, std::initializer_list<const NodeSet*> sets) {
  NodeSet seen = g.empty_set();
  for (const NodeSet* s : sets) {
    if (s->universe() != g.size()) throw QueryError("node set does not belong to this graph");
    if (seen.intersects(*s)) {
      const NodeIndex v = *(seen & *s).first();
      throw QueryError("node sets overlap at '" + g.name(v) + "'");
    }
    seen |= *s;
  }
}

}  // namespace cadjust
