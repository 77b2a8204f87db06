#include <algorithm>
#include <optional>
#include <random>

#include "doctest.h"

#include "cadjust/graph_io.hpp"
#include "cadjust/meek.hpp"
#include "cadjust/oracle.hpp"
#include "cadjust/paths.hpp"
#include "cadjust/reachability.hpp"
#include "cadjust/transforms.hpp"
#include "brute.hpp"
#include "support.hpp"

using namespace cadjust;
using testsupport::fixture;
using testsupport::seq;
using testsupport::set;

namespace {

bool has_collider(const MixedGraph& g, NodeIndex a, NodeIndex b, NodeIndex c) {
  return !g.adjacent(a, c) && g.directed(a, b) && g.directed(c, b);
}

// All 2^k orientations, filtered by acyclicity and unshielded colliders.
std::vector<MixedGraph> orientations_bf(const MixedGraph& g, bool literal) {
  std::vector<Edge> und;
  for (const Edge& e : g.edges()) {
    if (g.undirected(e.a, e.b)) und.push_back(e);
  }
  std::vector<MixedGraph> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << und.size()); ++mask) {
    std::vector<EdgeMark> marks = g.raw_marks();
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < und.size(); ++i) {
      const bool flip = mask >> i & 1;
      const NodeIndex t = flip ? und[i].b : und[i].a;
      const NodeIndex h = flip ? und[i].a : und[i].b;
      marks[t * n + h] = EdgeMark::Arrow;
      marks[h * n + t] = EdgeMark::Tail;
    }
    std::optional<MixedGraph> built;
    try {
      built = MixedGraph::from_marks(GraphClass::Mpdag, g.names(), marks, MixedGraph::Check::Structural);
    } catch (const GraphError&) {
      continue;
    }
    const MixedGraph& d = *built;
    bool fresh = false;
    for (NodeIndex b = 0; b < n && !literal && !fresh; ++b) {
      for (NodeIndex a = 0; a < n && !fresh; ++a) {
        for (NodeIndex c = a + 1; c < n && !fresh; ++c) {
          if (a != b && c != b && has_collider(d, a, b, c) && !has_collider(g, a, b, c)) fresh = true;
        }
      }
    }
    if (!fresh) out.push_back(d.with_class(GraphClass::Dag));
  }
  return out;
}

std::vector<std::string> texts(const std::vector<MixedGraph>& gs) {
  std::vector<std::string> out;
  for (const auto& g : gs) out.push_back(serialize_graph(g));
  std::sort(out.begin(), out.end());
  return out;
}

MixedGraph random_mag(std::mt19937_64& rng, std::size_t n) {
  std::bernoulli_distribution coin(0.3);
  for (;;) {
    const MixedGraph d = testsupport::random_dag(rng, n, 0.5);
    std::vector<EdgeMark> marks = d.raw_marks();
    for (const Edge& e : d.edges()) {
      if (coin(rng)) {
        marks[e.a * n + e.b] = EdgeMark::Arrow;
        marks[e.b * n + e.a] = EdgeMark::Arrow;
      }
    }
    try {
      return MixedGraph::from_marks(GraphClass::Pag, d.names(), marks, MixedGraph::Check::Structural);
    } catch (const GraphError&) {
    }
  }
}

}  // namespace

TEST_CASE("class sizes of the figures") {
  CHECK(enumerate_dag_extensions(fixture("fig3c.g")).members.size() == 2);
  CHECK(enumerate_dag_extensions(fixture("fig3a.g")).members.size() == 3);
  const MixedGraph d = parse_graph("mpdag\nA -> B\nB -> C\n");
  const DagClass one = enumerate_dag_extensions(d);
  REQUIRE(one.members.size() == 1);
  CHECK(serialize_graph(one.members[0]) == "dag\nA -> B\nB -> C\n");
  EnumerationOptions tight;
  tight.max_undirected = 1;
  CHECK_THROWS_AS(enumerate_dag_extensions(fixture("fig3a.g"), tight), EnumerationCapError);
}

TEST_CASE("enumeration matches brute-force orientation") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 200; ++i) {
    const MixedGraph g = testsupport::random_mpdag(rng, 2 + i % 6, 0.5, 8);
    const DagClass cls = enumerate_dag_extensions(g);
    REQUIRE(texts(cls.members) == texts(orientations_bf(g, false)));
    EnumerationOptions lit;
    lit.literal = true;
    CHECK(texts(enumerate_dag_extensions(g, lit).members) == texts(orientations_bf(g, true)));

    auto t = texts(cls.members);
    CHECK(std::adjacent_find(t.begin(), t.end()) == t.end());
    for (const MixedGraph& m : cls.members) {
      CHECK(m.graph_class() == GraphClass::Dag);
      for (const Edge& e : g.edges()) {
        REQUIRE(m.adjacent(e.a, e.b));
        if (g.directed(e.a, e.b)) CHECK(m.directed(e.a, e.b));
        if (g.directed(e.b, e.a)) CHECK(m.directed(e.b, e.a));
      }
      CHECK(m.edges().size() == g.edges().size());
      // Orienting g as m and re-closing reproduces m.
      std::vector<std::pair<NodeIndex, NodeIndex>> bk;
      for (const Edge& e : g.edges()) {
        if (g.undirected(e.a, e.b)) bk.push_back(m.directed(e.a, e.b) ? std::pair{e.a, e.b} : std::pair{e.b, e.a});
      }
      CHECK(add_background_knowledge(g, bk).raw_marks() == m.raw_marks());
    }
    for (const Edge& e : g.edges()) {
      if (!g.undirected(e.a, e.b)) continue;
      const bool fwd = std::any_of(cls.members.begin(), cls.members.end(),
                                   [&](const MixedGraph& m) { return m.directed(e.a, e.b); });
      const bool back = std::any_of(cls.members.begin(), cls.members.end(),
                                    [&](const MixedGraph& m) { return m.directed(e.b, e.a); });
      REQUIRE((fwd && back));
    }
  }
}

TEST_CASE("class verification on fig3a") {
  const MixedGraph a = fixture("fig3a.g");
  const Query sat{set(a, {"X"}), set(a, {"Y"}), set(a, {"V1"}), set(a, {"V2"})};
  const ClassVerification v = verify_criterion_across_class(a, sat);
  CHECK(v.agree());
  CHECK(v.graph_verdict == Verdict::Satisfied);
  CHECK(v.member_satisfied == std::vector<bool>{true, true, true});

  const Query viol{set(a, {"X"}), set(a, {"Y"}), set(a, {"V1"}), a.empty_set()};
  const ClassVerification w = verify_criterion_across_class(a, viol);
  CHECK(w.agree());
  CHECK(w.graph_verdict == Verdict::Violated);
  CHECK(w.member_satisfied == std::vector<bool>{false, false, false});

  const MixedGraph f1 = fixture("fig1.g");
  const Query q1{set(f1, {"X"}), set(f1, {"Y"}), f1.empty_set(), set(f1, {"Age", "Smoking"})};
  CHECK(verify_criterion_across_class(f1.with_class(GraphClass::Mpdag), q1).agree());

  const MixedGraph c = fixture("fig3c.g");
  CHECK_THROWS_AS(verify_criterion_across_class(c, Query{set(c, {"X"}), set(c, {"Y"}), c.empty_set(), c.empty_set()}),
                  PreconditionError);
}

TEST_CASE("moral-graph separation") {
  const MixedGraph f1 = fixture("fig1.g");
  const MixedGraph cut = parse_graph("dag\nSmoking -> X\nSmoking -> Y\nAge -> X\nAge -> Y\n");
  CHECK(dsep_moral(cut, set(cut, {"X"}), set(cut, {"Y"}), set(cut, {"Age", "Smoking"})));
  CHECK_FALSE(dsep_moral(f1, set(f1, {"X"}), set(f1, {"Y"}), set(f1, {"Age", "Smoking"})));
  const MixedGraph apart = parse_graph("dag\nA -> B\nC -> D\n");
  CHECK(dsep_moral(apart, set(apart, {"A"}), set(apart, {"D"}), apart.empty_set()));
  const MixedGraph f5 = fixture("fig5.g");
  const MixedGraph f5cut = delete_edges_into(f5, set(f5, {"X2"}));
  CHECK(dsep_moral(f5cut, set(f5cut, {"Y"}), set(f5cut, {"X1"}), set(f5cut, {"V1", "V2", "X2"})));

  std::mt19937_64 rng(72);
  for (int i = 0; i < 500; ++i) {
    const MixedGraph g = testsupport::random_dag(rng, 2 + i % 5, 0.45);
    const Query q = testsupport::random_query(rng, g);
    REQUIRE(dsep_moral(g, q.x, q.y, q.z) == brute::separated_bf(g, q.x, q.y, q.z));
  }
}

TEST_CASE("proper back-door reformulation") {
  const MixedGraph b = fixture("fig3b.g");
  const NodeSet bx = set(b, {"X1", "X2"});
  const NodeSet by = set(b, {"Y"});
  CHECK(adjustment_via_pbd(b, bx, by, set(b, {"S", "W", "Z"})));
  const MixedGraph f1 = fixture("fig1.g");
  CHECK_FALSE(adjustment_via_pbd(f1, set(f1, {"X"}), set(f1, {"Y"}), f1.empty_set()));
  const MixedGraph f5 = fixture("fig5.g");
  CHECK(adjustment_via_pbd(f5, set(f5, {"X1", "X2"}), set(f5, {"Y"}), set(f5, {"V1", "V2"})));

  std::mt19937_64 rng(73);
  int compared = 0;
  for (int i = 0; i < 500; ++i) {
    const MixedGraph g = testsupport::random_dag(rng, 2 + i % 5, 0.45);
    const Query q = testsupport::random_query(rng, g);
    const NodeSet w = q.s | q.z;
    REQUIRE(brute_force_proper_backdoor_graph(g, q.x, q.y) == proper_backdoor_graph(g, q.x, q.y));
    if (w.intersects(brute::forb_bf(g, q.x, q.y))) continue;
    ++compared;
    REQUIRE(adjustment_via_pbd(g, q.x, q.y, w) == !open_noncausal_path(g, q.x, q.y, w).has_value());
    REQUIRE(dag_criterion_oracle(g, q) == check_unconditional_adjustment(g, q.x, q.y, w).satisfied());
  }
  CHECK(compared > 150);
}

TEST_CASE("strict possibly causal check") {
  const MixedGraph c = fixture("fig3c.g");
  CHECK(strict_possibly_causal(c, seq(c, {"X", "V1", "V2", "Y"})));
  const MixedGraph s = parse_graph("mpdag\nA -- B\nB -- C\nC -> A\n");
  CHECK_FALSE(strict_possibly_causal(s, seq(s, {"A", "B", "C"})));
  const MixedGraph e = parse_graph("dag\nA -> B\n");
  CHECK(strict_possibly_causal(e, seq(e, {"A", "B"})));

  std::mt19937_64 rng(74);
  for (int i = 0; i < 200; ++i) {
    const MixedGraph g = testsupport::random_mpdag(rng, 2 + i % 6, 0.5, 20);
    for (const brute::Path& p : brute::all_paths(g, g.all_nodes(), g.all_nodes(), false)) {
      REQUIRE(strict_possibly_causal(g, p) == brute::pairwise_causal(g, p));
    }
    for (NodeIndex v = 0; v < g.size(); ++v) {
      const NodeSet w(g.size(), {v});
      CHECK(strict_possible_descendants(g, w) == brute::possde_bf(g, w));
      CHECK(strict_possible_ancestors(g, w) == brute::possan_bf(g, w));
    }
  }
}

TEST_CASE("canonical DAG of a MAG") {
  const MixedGraph ab = parse_graph("pag\nA <-> B\n");
  const MixedGraph d = canonical_dag(ab);
  CHECK(serialize_graph(d) == "dag\nL_A_B -> A\nL_A_B -> B\n");

  const MixedGraph directed = parse_graph("pag\nA -> B\nB -> C\n");
  CHECK(serialize_graph(canonical_dag(directed)) == "dag\nA -> B\nB -> C\n");

  const MixedGraph mag = parse_graph("pag\nV3 <-> X\nX -> Y\nV2 -> X\nV2 -> Y\nV1 -> Y\n");
  const MixedGraph cd = canonical_dag(mag);
  CHECK(cd.size() == mag.size() + 1);
  CHECK(cd.find("L_V3_X").has_value());

  // Non-ancestral inputs are rejected before they become graphs.
  CHECK_THROWS_AS(parse_graph("pag\nA -> B\nB -> C\nA <-> C\n"), GraphError);
  CHECK_THROWS_AS(canonical_dag(parse_graph("pag\nA o-> B\n")), GraphError);
}

TEST_CASE("canonical DAG preserves m-separation among observed nodes") {
  std::mt19937_64 rng(75);
  for (int i = 0; i < 200; ++i) {
    const MixedGraph mag = random_mag(rng, 3 + i % 4);
    const MixedGraph cd = canonical_dag(mag);
    const Query q = testsupport::random_query(rng, mag);
    auto lift = [&](const NodeSet& s) {
      NodeSet out = cd.empty_set();
      for (NodeIndex v : s) out.insert(*cd.find(mag.name(v)));
      return out;
    };
    REQUIRE(m_separated(mag, q.x, q.y, q.z).separated == dsep_moral(cd, lift(q.x), lift(q.y), lift(q.z)));
  }
}
