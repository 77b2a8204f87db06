#include "support.hpp"

#include <algorithm>

#include "cadjust/graph_io.hpp"
#include "cadjust/meek.hpp"

using namespace cadjust;

namespace testsupport {

MixedGraph fixture(const std::string& name) { return read_graph_file(std::string(CADJUST_FIXTURE_DIR) + "/" + name); }

NodeSet set(const MixedGraph& g, std::initializer_list<const char*> names) {
  NodeSet s = g.empty_set();
  for (const char* n : names) s.insert(g.index(n));
  return s;
}

std::vector<NodeIndex> seq(const MixedGraph& g, std::initializer_list<const char*> names) {
  std::vector<NodeIndex> out;
  for (const char* n : names) out.push_back(g.index(n));
  return out;
}

std::vector<std::string> names(const MixedGraph& g, const NodeSet& s) { return g.names_of(s); }

namespace {

std::vector<std::string> letters(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(1, static_cast<char>('A' + i));
  return out;
}

}  // namespace

MixedGraph random_dag(std::mt19937_64& rng, std::size_t n, double p) {
  auto nodes = letters(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution coin(p);
  std::vector<NamedEdge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.push_back({nodes[order[i]], nodes[order[j]]});
    }
  }
  return MixedGraph::create(GraphClass::Dag, nodes, edges);
}

std::size_t undirected_count(const MixedGraph& g) {
  std::size_t k = 0;
  for (const Edge& e : g.edges()) {
    if (g.undirected(e.a, e.b)) ++k;
  }
  return k;
}

MixedGraph random_mpdag(std::mt19937_64& rng, std::size_t n, double p, std::size_t max_undirected) {
  const MixedGraph dag = random_dag(rng, n, p);
  MixedGraph g = cpdag(dag);
  std::bernoulli_distribution orient(0.25);
  for (;;) {
    std::vector<std::pair<NodeIndex, NodeIndex>> knowledge;
    const std::size_t k = undirected_count(g);
    for (const Edge& e : g.edges()) {
      if (!g.undirected(e.a, e.b)) continue;
      if (k > max_undirected || orient(rng)) {
        knowledge.emplace_back(dag.directed(e.a, e.b) ? std::pair{e.a, e.b} : std::pair{e.b, e.a});
        if (k > max_undirected) break;
      }
    }
    if (!knowledge.empty()) g = add_background_knowledge(g, knowledge);
    if (undirected_count(g) <= max_undirected) return g;
  }
}

namespace {

// Zhang's orientation rules R1-R3 on a mark matrix, to a fixpoint.
void close_pag_marks(std::size_t n, std::vector<EdgeMark>& m) {
  auto mk = [&](NodeIndex from, NodeIndex at) -> EdgeMark& { return m[from * n + at]; };
  auto adj = [&](NodeIndex u, NodeIndex v) { return mk(u, v) != EdgeMark::None; };
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeIndex a = 0; a < n; ++a) {
      for (NodeIndex b = 0; b < n; ++b) {
        if (a == b || !adj(a, b)) continue;
        for (NodeIndex c = 0; c < n; ++c) {
          if (c == a || c == b || !adj(b, c)) continue;
          if (!adj(a, c) && mk(a, b) == EdgeMark::Arrow && mk(c, b) == EdgeMark::Circle) {
            mk(c, b) = EdgeMark::Tail;
            mk(b, c) = EdgeMark::Arrow;
            changed = true;
          }
          const bool chain1 = mk(b, a) == EdgeMark::Tail && mk(a, b) == EdgeMark::Arrow && mk(b, c) == EdgeMark::Arrow;
          const bool chain2 = mk(a, b) == EdgeMark::Arrow && mk(c, b) == EdgeMark::Tail && mk(b, c) == EdgeMark::Arrow;
          if (adj(a, c) && (chain1 || chain2) && mk(a, c) == EdgeMark::Circle) {
            mk(a, c) = EdgeMark::Arrow;
            changed = true;
          }
          if (adj(a, c) || mk(a, b) != EdgeMark::Arrow || mk(c, b) != EdgeMark::Arrow) continue;
          for (NodeIndex d = 0; d < n; ++d) {
            if (d == a || d == b || d == c || !adj(d, a) || !adj(d, c) || !adj(d, b)) continue;
            if (mk(d, a) == EdgeMark::Circle && mk(d, c) == EdgeMark::Circle && mk(d, b) == EdgeMark::Circle) {
              mk(d, b) = EdgeMark::Arrow;
              changed = true;
            }
          }
        }
      }
    }
  }
}

}  // namespace

MixedGraph random_pag(std::mt19937_64& rng, std::size_t n, double p) {
  std::uniform_int_distribution<int> kind(0, 3);
  for (;;) {
    const MixedGraph dag = random_dag(rng, n, p);
    std::vector<EdgeMark> marks = dag.raw_marks();
    for (const Edge& e : dag.edges()) {
      const bool forward = dag.directed(e.a, e.b);
      const NodeIndex tail = forward ? e.a : e.b;
      const NodeIndex head = forward ? e.b : e.a;
      switch (kind(rng)) {
        case 1:
          marks[head * n + tail] = EdgeMark::Arrow;
          break;
        case 2:
          marks[head * n + tail] = EdgeMark::Circle;
          break;
        case 3:
          marks[head * n + tail] = EdgeMark::Circle;
          marks[tail * n + head] = EdgeMark::Circle;
          break;
        default:
          break;
      }
    }
    close_pag_marks(n, marks);
    try {
      return MixedGraph::from_marks(GraphClass::Pag, dag.names(), std::move(marks));
    } catch (const GraphError&) {
    }
  }
}

Query random_query(std::mt19937_64& rng, const MixedGraph& g) {
  const std::size_t n = g.size();
  for (;;) {
    Query q{g.empty_set(), g.empty_set(), g.empty_set(), g.empty_set()};
    std::discrete_distribution<int> role({2, 2, 2, 2, 2});
    for (NodeIndex v = 0; v < n; ++v) {
      switch (role(rng)) {
        case 0:
          if (q.x.size() < 2) q.x.insert(v);
          break;
        case 1:
          if (q.y.size() < 2) q.y.insert(v);
          break;
        case 2:
          q.z.insert(v);
          break;
        case 3:
          q.s.insert(v);
          break;
        default:
          break;
      }
    }
    if (!q.x.empty() && !q.y.empty()) return q;
  }
}

std::vector<Instance> class_suite(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(3, 6);
  std::uniform_real_distribution<double> density(0.3, 0.7);
  std::vector<Instance> out;
  while (out.size() < count) {
    const MixedGraph g = random_mpdag(rng, size(rng), density(rng), 4);
    for (int attempt = 0; attempt < 5 && out.size() < count; ++attempt) {
      const Query q = random_query(rng, g);
      if (!check_applicability(g, q.x, q.y, q.z).satisfied()) continue;
      if (!check_amenability(g, q.x, q.y).satisfied()) continue;
      out.push_back({g, q});
    }
  }
  return out;
}

}  // namespace testsupport
