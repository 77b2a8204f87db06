#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cadjust/criterion.hpp"
#include "cadjust/graph.hpp"

namespace cadjust {

struct EnumerationOptions {
  std::size_t max_undirected = 20;
  /// Keep orientations that add unshielded colliders (acyclicity only).
  bool literal = false;
};

class EnumerationCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DagClass {
  MixedGraph source;
  std::vector<MixedGraph> members;
};

/// DAGs with the nodes, adjacencies and directed edges of the MPDAG and no
/// unshielded collider the MPDAG lacks. Members come in canonical order:
/// undirected edges are decided in edge order, smaller endpoint as tail first.
DagClass enumerate_dag_extensions(const MixedGraph& g, const EnumerationOptions& opts = {});

/// d-separation by moralizing the ancestral subgraph of A u B u C.
bool dsep_moral(const MixedGraph& dag, const NodeSet& a, const NodeSet& b, const NodeSet& c);

/// Proper back-door graph built from brute-force causal path enumeration.
MixedGraph brute_force_proper_backdoor_graph(const MixedGraph& dag, const NodeSet& x, const NodeSet& y);

/// W d-separates X and Y in the proper back-door graph.
bool adjustment_via_pbd(const MixedGraph& dag, const NodeSet& x, const NodeSet& y, const NodeSet& w);

/// Pairwise check over every node pair of the path.
bool strict_possibly_causal(const MixedGraph& g, const std::vector<NodeIndex>& path);

/// Closures and mediator sets by enumerating every simple path.
NodeSet strict_possible_descendants(const MixedGraph& g, const NodeSet& w);
NodeSet strict_possible_ancestors(const MixedGraph& g, const NodeSet& w);
NodeSet strict_possible_mediators(const MixedGraph& g, const NodeSet& x, const NodeSet& y);
NodeSet strict_forbidden_set(const MixedGraph& g, const NodeSet& x, const NodeSet& y);

/// Adjustment criterion for S u Z in a DAG, decided through the brute-force
/// forbidden set and moral-graph separation in the proper back-door graph.
bool dag_criterion_oracle(const MixedGraph& dag, const Query& q);

struct ClassVerification {
  Verdict graph_verdict = Verdict::Satisfied;
  std::vector<bool> member_satisfied;
  std::size_t discrepancies = 0;

  bool agree() const { return discrepancies == 0; }
};

/// Compares the criterion verdict on g with the DAG-level verdict in every
/// member of its class. Throws PreconditionError when Z meets PossDe(X) or g
/// is not amenable.
ClassVerification verify_criterion_across_class(const MixedGraph& g, const Query& q,
                                                const EnumerationOptions& opts = {});

/// Replaces every A <-> B by a latent L_A_B with L_A_B -> A and L_A_B -> B.
MixedGraph canonical_dag(const MixedGraph& mag);

}  // namespace cadjust
