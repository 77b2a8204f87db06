#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cadjust/node_set.hpp"

namespace cadjust {

enum class EdgeMark : std::uint8_t { None = 0, Tail, Arrow, Circle };

enum class GraphClass { Dag, Mpdag, Pag };

std::string_view to_string(GraphClass cls);
std::optional<GraphClass> graph_class_from_token(std::string_view token);

/// Edge between nodes a < b with the mark at each endpoint.
struct Edge {
  NodeIndex a = 0;
  NodeIndex b = 0;
  EdgeMark mark_at_a = EdgeMark::None;
  EdgeMark mark_at_b = EdgeMark::None;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Edge given by node names, in any endpoint order.
struct NamedEdge {
  std::string from;
  std::string to;
  EdgeMark mark_at_from = EdgeMark::Tail;
  EdgeMark mark_at_to = EdgeMark::Arrow;
};

class GraphError : public std::runtime_error {
 public:
  enum class Kind {
    InvalidName,
    DuplicateNode,
    UnknownNode,
    SelfLoop,
    DuplicateEdge,
    IllegalMark,
    DirectedCycle,
    AlmostDirectedCycle,
    NotMeekClosed,
    WrongClass,
  };

  GraphError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

bool is_valid_node_name(std::string_view name);

/// Immutable graph with per-endpoint edge marks. Node indices follow the
/// lexicographic order of node names.
class MixedGraph {
 public:
  /// Full runs every class invariant, including Meek closure for MPDAGs.
  /// Structural skips the closure test (used for PDAGs fed to the closure).
  enum class Check { Full, Structural };

  MixedGraph() = default;

  static MixedGraph create(GraphClass cls, std::vector<std::string> nodes,
                           const std::vector<NamedEdge>& edges, Check check = Check::Full);

  /// `marks[u * n + v]` is the mark at v on the edge between u and v.
  static MixedGraph from_marks(GraphClass cls, std::vector<std::string> sorted_names,
                               std::vector<EdgeMark> marks, Check check = Check::Full);

  GraphClass graph_class() const { return class_; }
  std::size_t size() const { return names_.size(); }
  std::size_t edge_count() const;

  const std::string& name(NodeIndex v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<NodeIndex> find(std::string_view name) const;
  NodeIndex index(std::string_view name) const;

  NodeSet empty_set() const { return NodeSet(size()); }
  NodeSet all_nodes() const { return NodeSet::full(size()); }
  NodeSet node_set(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(const NodeSet& set) const;
  std::vector<std::string> names_of(const std::vector<NodeIndex>& seq) const;

  /// Mark at `at` on the edge between `from` and `at`; None if not adjacent.
  EdgeMark mark(NodeIndex from, NodeIndex at) const { return marks_[from * size() + at]; }
  bool adjacent(NodeIndex u, NodeIndex v) const { return mark(u, v) != EdgeMark::None; }
  /// u -> v
  bool directed(NodeIndex u, NodeIndex v) const {
    return mark(v, u) == EdgeMark::Tail && mark(u, v) == EdgeMark::Arrow;
  }
  /// u - v or u o-o v
  bool undirected(NodeIndex u, NodeIndex v) const;
  /// u <-> v
  bool bidirected(NodeIndex u, NodeIndex v) const {
    return mark(u, v) == EdgeMark::Arrow && mark(v, u) == EdgeMark::Arrow;
  }
  bool arrowhead_at(NodeIndex from, NodeIndex at) const { return mark(from, at) == EdgeMark::Arrow; }

  const std::vector<NodeIndex>& neighbors(NodeIndex v) const { return adjacency_.at(v); }
  std::vector<Edge> edges() const;
  const std::vector<EdgeMark>& raw_marks() const { return marks_; }

  /// Copy with a different class tag, re-validated.
  MixedGraph with_class(GraphClass cls, Check check = Check::Full) const;

  friend bool operator==(const MixedGraph& a, const MixedGraph& b) {
    return a.class_ == b.class_ && a.names_ == b.names_ && a.marks_ == b.marks_;
  }

 private:
  void build_adjacency();
  void validate(Check check) const;

  GraphClass class_ = GraphClass::Dag;
  std::vector<std::string> names_;
  std::vector<EdgeMark> marks_;
  std::vector<std::vector<NodeIndex>> adjacency_;
};

/// True iff the directed (->) edges of g contain a cycle.
bool has_directed_cycle(const MixedGraph& g);

/// Topological order of the directed part; throws GraphError on a cycle.
std::vector<NodeIndex> topological_order(const MixedGraph& g);

/// Malformed query: overlapping node sets or sets from another graph.
class QueryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws QueryError unless every set belongs to g and the sets are pairwise disjoint.
void require_disjoint(const MixedGraph& g, std::initializer_list<const NodeSet*> sets);

}  // namespace cadjust
