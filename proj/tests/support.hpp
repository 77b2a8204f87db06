#pragma once

#include <random>
#include <string>
#include <vector>

#include "cadjust/criterion.hpp"
#include "cadjust/graph.hpp"

namespace testsupport {

cadjust::MixedGraph fixture(const std::string& name);

cadjust::NodeSet set(const cadjust::MixedGraph& g, std::initializer_list<const char*> names);
std::vector<cadjust::NodeIndex> seq(const cadjust::MixedGraph& g, std::initializer_list<const char*> names);
std::vector<std::string> names(const cadjust::MixedGraph& g, const cadjust::NodeSet& s);

/// Random DAG over nodes A, B, C, ... with edge probability p.
cadjust::MixedGraph random_dag(std::mt19937_64& rng, std::size_t n, double p);

/// CPDAG of a random DAG with some edges oriented as in that DAG, re-closed,
/// and at most `max_undirected` undirected edges.
cadjust::MixedGraph random_mpdag(std::mt19937_64& rng, std::size_t n, double p, std::size_t max_undirected);

/// Random PAG-shaped graph: a random DAG whose edges are re-marked as
/// ->, <->, o-> or o-o, closed under Zhang's rules R1-R3, and kept only if
/// it passes the structural PAG checks.
cadjust::MixedGraph random_pag(std::mt19937_64& rng, std::size_t n, double p);

/// Pairwise disjoint random sets with X and Y non-empty.
cadjust::Query random_query(std::mt19937_64& rng, const cadjust::MixedGraph& g);

std::size_t undirected_count(const cadjust::MixedGraph& g);

struct Instance {
  cadjust::MixedGraph g;
  cadjust::Query q;
};

/// Random MPDAG instances (<= 6 nodes, <= 4 undirected edges) where Z
/// avoids PossDe(X) and the query is amenable.
std::vector<Instance> class_suite(std::uint64_t seed, std::size_t count);

}  // namespace testsupport
