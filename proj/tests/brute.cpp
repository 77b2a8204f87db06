#include "brute.hpp"

#include <algorithm>

#include "cadjust/reachability.hpp"

using namespace cadjust;

namespace brute {

namespace {

void extend(const MixedGraph& g, Path& cur, std::vector<bool>& used, const NodeSet& y, std::vector<Path>& out) {
  const NodeIndex last = cur.back();
  if (cur.size() > 1 && y.contains(last)) out.push_back(cur);
  for (NodeIndex v = 0; v < g.size(); ++v) {
    if (used[v] || !g.adjacent(last, v)) continue;
    used[v] = true;
    cur.push_back(v);
    extend(g, cur, used, y, out);
    cur.pop_back();
    used[v] = false;
  }
}

}  // namespace

// Every simple path from X to Y; `proper` keeps only paths touching X once.
std::vector<Path> all_paths(const MixedGraph& g, const NodeSet& x, const NodeSet& y, bool proper) {
  std::vector<Path> out;
  for (NodeIndex s : x) {
    std::vector<bool> used(g.size(), false);
    used[s] = true;
    Path cur{s};
    extend(g, cur, used, y, out);
  }
  if (proper) {
    std::erase_if(out, [&](const Path& p) {
      return std::any_of(p.begin() + 1, p.end(), [&](NodeIndex v) { return x.contains(v); });
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

St status(const MixedGraph& g, NodeIndex a, NodeIndex b, NodeIndex c) {
  if (g.mark(a, b) == EdgeMark::Arrow && g.mark(c, b) == EdgeMark::Arrow) return St::Col;
  if (g.directed(b, a) || g.directed(b, c)) return St::Ndc;
  if (g.adjacent(a, c)) return St::Nd;
  const bool circles = g.mark(a, b) == EdgeMark::Circle && g.mark(c, b) == EdgeMark::Circle;
  const bool undirected = g.undirected(a, b) && g.undirected(b, c);
  return circles || undirected ? St::Ndc : St::Nd;
}

bool definite(const MixedGraph& g, const Path& p) {
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    if (status(g, p[i - 1], p[i], p[i + 1]) == St::Nd) return false;
  }
  return true;
}

bool pairwise_causal(const MixedGraph& g, const Path& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (g.mark(p[j], p[i]) == EdgeMark::Arrow) return false;
    }
  }
  return true;
}

bool consecutive_causal(const MixedGraph& g, const Path& p) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (g.mark(p[i + 1], p[i]) == EdgeMark::Arrow) return false;
  }
  return true;
}

NodeSet directed_ancestors(const MixedGraph& g, const NodeSet& c) {
  NodeSet an = c;
  bool grew = true;
  while (grew) {
    grew = false;
    for (NodeIndex u = 0; u < g.size(); ++u) {
      if (an.contains(u)) continue;
      for (NodeIndex v : an) {
        if (g.directed(u, v)) {
          an.insert(u);
          grew = true;
          break;
        }
      }
    }
  }
  return an;
}

bool open_given(const MixedGraph& g, const Path& p, const NodeSet& c) {
  const NodeSet an = directed_ancestors(g, c);
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const St s = status(g, p[i - 1], p[i], p[i + 1]);
    if (s == St::Col && !an.contains(p[i])) return false;
    if (s == St::Ndc && c.contains(p[i])) return false;
  }
  return true;
}

bool separated_bf(const MixedGraph& g, const NodeSet& a, const NodeSet& b, const NodeSet& c) {
  for (const Path& p : all_paths(g, a, b, false)) {
    if (definite(g, p) && open_given(g, p, c)) return false;
  }
  return true;
}

namespace {

bool chain_reaches(const MixedGraph& g, NodeIndex x, NodeIndex y, const NodeSet& pa_y, NodeIndex cur,
                   std::vector<bool>& used) {
  // cur is a chain node in Pa(y) bidirected-connected to x; look for V into cur.
  for (NodeIndex v = 0; v < g.size(); ++v) {
    if (v == x || v == y || used[v] || !g.adjacent(v, cur)) continue;
    if (g.mark(v, cur) != EdgeMark::Arrow) continue;
    if (!g.adjacent(v, y)) return true;
    if (pa_y.contains(v) && g.bidirected(v, cur)) {
      used[v] = true;
      if (chain_reaches(g, x, y, pa_y, v, used)) return true;
      used[v] = false;
    }
  }
  return false;
}

}  // namespace

bool visible_bf(const MixedGraph& g, NodeIndex x, NodeIndex y) {
  const NodeSet pa_y = parents(g, NodeSet(g.size(), {y}));
  std::vector<bool> used(g.size(), false);
  used[x] = true;
  return chain_reaches(g, x, y, pa_y, x, used);
}

NodeSet possde_bf(const MixedGraph& g, const NodeSet& w) {
  NodeSet out = w;
  for (const Path& p : all_paths(g, w, g.all_nodes(), false)) {
    if (pairwise_causal(g, p)) out.insert(p.back());
  }
  return out;
}

NodeSet possan_bf(const MixedGraph& g, const NodeSet& w) {
  NodeSet out = w;
  for (const Path& p : all_paths(g, g.all_nodes(), w, false)) {
    if (pairwise_causal(g, p)) out.insert(p.front());
  }
  return out;
}

NodeSet forb_bf(const MixedGraph& g, const NodeSet& x, const NodeSet& y) {
  NodeSet med = g.empty_set();
  for (const Path& p : all_paths(g, x, y, true)) {
    if (!pairwise_causal(g, p)) continue;
    for (std::size_t i = 1; i < p.size(); ++i) med.insert(p[i]);
  }
  return med.empty() ? med : possde_bf(g, med);
}

bool amenable_bf(const MixedGraph& g, const NodeSet& x, const NodeSet& y) {
  for (const Path& p : all_paths(g, x, y, true)) {
    if (!pairwise_causal(g, p)) continue;
    switch (g.graph_class()) {
      case GraphClass::Dag:
        break;
      case GraphClass::Mpdag:
        if (g.undirected(p[0], p[1])) return false;
        break;
      case GraphClass::Pag:
        if (!g.directed(p[0], p[1]) || !visible_bf(g, p[0], p[1])) return false;
        break;
    }
  }
  return true;
}

namespace {

bool blocks_noncausal(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& c) {
  for (const Path& p : all_paths(g, x, y, true)) {
    if (definite(g, p) && !pairwise_causal(g, p) && open_given(g, p, c)) return false;
  }
  return true;
}

}  // namespace

Outcome criterion_bf(const MixedGraph& g, const Query& q) {
  if (q.z.intersects(possde_bf(g, q.x))) return Outcome::ZInPossDe;
  if (!amenable_bf(g, q.x, q.y)) return Outcome::NotAmenable;
  if (q.s.intersects(forb_bf(g, q.x, q.y))) return Outcome::ForbiddenHit;
  if (!blocks_noncausal(g, q.x, q.y, q.s | q.z)) return Outcome::OpenPath;
  return Outcome::Satisfied;
}

bool unconditional_bf(const MixedGraph& g, const NodeSet& x, const NodeSet& y, const NodeSet& w) {
  return amenable_bf(g, x, y) && !w.intersects(forb_bf(g, x, y)) && blocks_noncausal(g, x, y, w);
}

Outcome outcome_of(const CriterionReport& r) {
  if (r.satisfied()) return Outcome::Satisfied;
  switch (*r.clause) {
    case Clause::ZInPossDe:
      return Outcome::ZInPossDe;
    case Clause::NotAmenable:
      return Outcome::NotAmenable;
    case Clause::ForbiddenHit:
      return Outcome::ForbiddenHit;
    case Clause::OpenPath:
      return Outcome::OpenPath;
  }
  return Outcome::Satisfied;
}

}  // namespace brute
