#include "cadjust/sem.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "cadjust/paths.hpp"

namespace cadjust {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kRegularization = 1e-12;
constexpr double kSolveTolerance = 1e-9;

std::vector<Index> as_index(const std::vector<NodeIndex>& v) { return {v.begin(), v.end()}; }
std::vector<Index> as_index(const NodeSet& s) { return as_index(s.to_vector()); }

// A^{-1} B for a symmetric positive semi-definite A.
MatrixXd solve_psd(const MatrixXd& a, const MatrixXd& b) {
  if (a.rows() == 0 || b.cols() == 0) return MatrixXd::Zero(a.rows(), b.cols());
  Eigen::LDLT<MatrixXd> ldlt(a);
  MatrixXd x = ldlt.solve(b);
  if (ldlt.info() == Eigen::Success && (a * x - b).cwiseAbs().maxCoeff() < kSolveTolerance) return x;
  const MatrixXd reg = a + kRegularization * MatrixXd::Identity(a.rows(), a.cols());
  x = reg.ldlt().solve(b);
  if ((a * x - b).cwiseAbs().maxCoeff() >= kSolveTolerance) {
    throw std::domain_error("conditioning block is singular");
  }
  return x;
}

MatrixXd reduced_form(const MatrixXd& b) {
  const Index n = b.rows();
  return (MatrixXd::Identity(n, n) - b).partialPivLu().solve(MatrixXd::Identity(n, n));
}

}  // namespace

LinearSEM::LinearSEM(MixedGraph dag, MatrixXd coef, VectorXd noise_var)
    : dag_(std::move(dag)), coef_(std::move(coef)), noise_(std::move(noise_var)) {
  if (dag_.graph_class() != GraphClass::Dag) throw GraphError(GraphError::Kind::WrongClass, "a SEM needs a DAG");
  const auto n = static_cast<Index>(dag_.size());
  if (coef_.rows() != n || coef_.cols() != n || noise_.size() != n) {
    throw std::invalid_argument("SEM parameters do not match the node count");
  }
  for (Index c = 0; c < n; ++c) {
    if (!(noise_(c) > 0.0)) throw std::invalid_argument("noise variances must be positive");
    for (Index p = 0; p < n; ++p) {
      if (coef_(c, p) != 0.0 && !dag_.directed(static_cast<NodeIndex>(p), static_cast<NodeIndex>(c))) {
        throw std::invalid_argument("coefficient on a missing edge");
      }
    }
  }
}

LinearSEM LinearSEM::random(const MixedGraph& dag, std::mt19937_64& rng, double lo, double hi) {
  const auto n = static_cast<Index>(dag.size());
  std::uniform_real_distribution<double> draw(lo, hi);
  MatrixXd coef = MatrixXd::Zero(n, n);
  for (const Edge& e : dag.edges()) {
    const bool forward = dag.directed(e.a, e.b);
    const auto parent = static_cast<Index>(forward ? e.a : e.b);
    const auto child = static_cast<Index>(forward ? e.b : e.a);
    coef(child, parent) = draw(rng);
  }
  return LinearSEM(dag, std::move(coef), VectorXd::Ones(n));
}

LinearSEM LinearSEM::constant(const MixedGraph& dag, double c) {
  const auto n = static_cast<Index>(dag.size());
  MatrixXd coef = MatrixXd::Zero(n, n);
  for (const Edge& e : dag.edges()) {
    const bool forward = dag.directed(e.a, e.b);
    coef(static_cast<Index>(forward ? e.b : e.a), static_cast<Index>(forward ? e.a : e.b)) = c;
  }
  return LinearSEM(dag, std::move(coef), VectorXd::Ones(n));
}

LinearSEM LinearSEM::standardized() const {
  const auto n = static_cast<Index>(dag_.size());
  MatrixXd sigma = MatrixXd::Zero(n, n);
  VectorXd noise(n);
  std::vector<Index> done;
  for (NodeIndex node : topological_order(dag_)) {
    const auto v = static_cast<Index>(node);
    for (Index u : done) {
      double s = 0.0;
      for (Index p = 0; p < n; ++p) s += coef_(v, p) * sigma(p, u);
      sigma(v, u) = sigma(u, v) = s;
    }
    const VectorXd b = coef_.row(v).transpose();
    const double explained = b.dot(sigma * b);
    noise(v) = 1.0 - explained;
    if (noise(v) <= kRegularization) {
      throw std::domain_error("cannot standardize: parents of " + dag_.name(node) + " explain all its variance");
    }
    sigma(v, v) = 1.0;
    done.push_back(v);
  }
  return LinearSEM(dag_, coef_, std::move(noise));
}

Gaussian observational_law(const LinearSEM& sem) {
  const auto n = static_cast<Index>(sem.dag().size());
  const MatrixXd m = reduced_form(sem.coef());
  Gaussian out;
  out.vars = sem.dag().all_nodes().to_vector();
  out.mean = VectorXd::Zero(n);
  out.cov = m * sem.noise_var().asDiagonal() * m.transpose();
  return out;
}

double wright_covariance(const LinearSEM& sem, NodeIndex u, NodeIndex v) {
  const MixedGraph& g = sem.dag();
  if (u == v) return 1.0;
  auto coef = [&](NodeIndex a, NodeIndex b) {
    return g.directed(a, b) ? sem.coef()(static_cast<Index>(b), static_cast<Index>(a))
                            : sem.coef()(static_cast<Index>(a), static_cast<Index>(b));
  };
  double total = 0.0;
  std::vector<NodeIndex> path{u};
  std::vector<bool> on(g.size(), false);
  on[u] = true;
  std::function<void(double)> extend = [&](double product) {
    const NodeIndex last = path.back();
    for (NodeIndex t : g.neighbors(last)) {
      if (on[t]) continue;
      if (path.size() >= 2 && g.directed(path[path.size() - 2], last) && g.directed(t, last)) continue;
      const double next = product * coef(last, t);
      if (t == v) {
        total += next;
        continue;
      }
      path.push_back(t);
      on[t] = true;
      extend(next);
      on[t] = false;
      path.pop_back();
    }
  };
  extend(1.0);
  return total;
}

Gaussian interventional_law(const LinearSEM& sem, const NodeSet& x, const VectorXd& values) {
  const auto n = static_cast<Index>(sem.dag().size());
  if (values.size() != static_cast<Index>(x.size())) throw std::invalid_argument("one value per intervened node");
  MatrixXd b = sem.coef();
  VectorXd noise = sem.noise_var();
  VectorXd intercept = VectorXd::Zero(n);
  Index k = 0;
  for (NodeIndex v : x) {
    const auto i = static_cast<Index>(v);
    b.row(i).setZero();
    noise(i) = 0.0;
    intercept(i) = values(k++);
  }
  const MatrixXd m = reduced_form(b);
  Gaussian out;
  out.vars = sem.dag().all_nodes().to_vector();
  out.mean = m * intercept;
  out.cov = m * noise.asDiagonal() * m.transpose();
  return out;
}

Gaussian condition(const Gaussian& law, const std::vector<NodeIndex>& on, const VectorXd& values) {
  std::vector<Index> given;
  std::vector<Index> rest;
  std::vector<NodeIndex> rest_vars;
  for (NodeIndex v : on) {
    auto it = std::find(law.vars.begin(), law.vars.end(), v);
    if (it == law.vars.end()) throw std::invalid_argument("conditioning on a variable outside the law");
    given.push_back(it - law.vars.begin());
  }
  for (std::size_t i = 0; i < law.vars.size(); ++i) {
    if (std::find(given.begin(), given.end(), static_cast<Index>(i)) == given.end()) {
      rest.push_back(static_cast<Index>(i));
      rest_vars.push_back(law.vars[i]);
    }
  }
  const MatrixXd s11 = law.cov(given, given);
  const MatrixXd s21 = law.cov(rest, given);
  const MatrixXd k = solve_psd(s11, s21.transpose()).transpose();
  Gaussian out;
  out.vars = std::move(rest_vars);
  out.mean = law.mean(rest) + k * (values - law.mean(given));
  out.cov = law.cov(rest, rest) - k * s21.transpose();
  return out;
}

AffineLaw interventional_conditional(const LinearSEM& sem, const NodeSet& x, const NodeSet& y, const NodeSet& z) {
  require_disjoint(sem.dag(), {&x, &y, &z});
  MatrixXd b = sem.coef();
  VectorXd noise = sem.noise_var();
  const auto xi = as_index(x);
  const auto yi = as_index(y);
  const auto zi = as_index(z);
  for (Index i : xi) {
    b.row(i).setZero();
    noise(i) = 0.0;
  }
  const MatrixXd m = reduced_form(b);
  const MatrixXd v = m * noise.asDiagonal() * m.transpose();
  const MatrixXd p = m(Eigen::all, xi);
  const MatrixXd gain = solve_psd(v(zi, zi), v(zi, yi)).transpose();
  AffineLaw out;
  out.bx = p(yi, Eigen::all) - gain * p(zi, Eigen::all);
  out.bz = gain;
  out.cov = v(yi, yi) - gain * v(zi, yi);
  return out;
}

AffineLaw adjustment_formula_law(const LinearSEM& sem, const Query& q) {
  require_disjoint(sem.dag(), {&q.x, &q.y, &q.z, &q.s});
  const MatrixXd sigma = observational_law(sem).cov;
  const auto xi = as_index(q.x);
  const auto yi = as_index(q.y);
  const auto zi = as_index(q.z);
  const auto si = as_index(q.s);
  std::vector<Index> wi = xi;
  wi.insert(wi.end(), zi.begin(), zi.end());
  wi.insert(wi.end(), si.begin(), si.end());

  const MatrixXd a = solve_psd(sigma(wi, wi), sigma(wi, yi)).transpose();
  const MatrixXd residual = sigma(yi, yi) - a * sigma(wi, yi);
  const auto nx = static_cast<Index>(xi.size());
  const auto nz = static_cast<Index>(zi.size());
  const auto ns = static_cast<Index>(si.size());
  const MatrixXd ax = a.leftCols(nx);
  const MatrixXd az = a.middleCols(nx, nz);
  const MatrixXd as = a.rightCols(ns);

  const MatrixXd g = solve_psd(sigma(zi, zi), sigma(zi, si)).transpose();
  const MatrixXd s_given_z = sigma(si, si) - g * sigma(zi, si);

  AffineLaw out;
  out.bx = ax;
  out.bz = az + as * g;
  out.cov = residual + as * s_given_z * as.transpose();
  return out;
}

IdentityGap adjustment_identity_gap(const LinearSEM& sem, const Query& q) {
  const AffineLaw lhs = interventional_conditional(sem, q.x, q.y, q.z);
  const AffineLaw rhs = adjustment_formula_law(sem, q);
  auto max_abs = [](const MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); };
  IdentityGap gap;
  gap.mean_gap = std::max(max_abs(lhs.bx - rhs.bx), max_abs(lhs.bz - rhs.bz));
  gap.cov_gap = max_abs(lhs.cov - rhs.cov);
  return gap;
}

IdentityReport verify_adjustment_identity(const MixedGraph& dag, const Query& q, std::size_t trials,
                                          std::uint64_t seed, double lo, double hi) {
  IdentityReport report;
  report.trials = trials;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const IdentityGap gap = adjustment_identity_gap(LinearSEM::random(dag, rng, lo, hi), q);
    report.per_trial.push_back(gap);
    report.max_mean_gap = std::max(report.max_mean_gap, gap.mean_gap);
    report.max_cov_gap = std::max(report.max_cov_gap, gap.cov_gap);
  }
  return report;
}

namespace {

LinearSEM path_sem(const MixedGraph& g, const std::vector<NamedEdge>& edges, double c) {
  const MixedGraph dag = MixedGraph::create(GraphClass::Dag, g.names(), edges);
  return LinearSEM::constant(dag, c).standardized();
}

}  // namespace

NonIdentifiabilityWitness nonidentifiability_witness(const MixedGraph& g, const NodeSet& x, const NodeSet& y,
                                                     const NodeSet& z, double coefficient) {
  require_disjoint(g, {&x, &y, &z});
  if (g.graph_class() != GraphClass::Mpdag) {
    throw PreconditionError("the non-identifiability construction needs an MPDAG");
  }
  const auto paths =
      enumerate_possibly_causal_paths(g, x, y, [&](NodeIndex a, NodeIndex b) { return g.undirected(a, b); });
  if (paths.empty()) throw PreconditionError("the query is amenable; there is no witness path");
  const PathWitness* best = nullptr;
  for (const PathWitness& p : paths) {
    const bool avoids_z = std::none_of(p.nodes.begin(), p.nodes.end(), [&](NodeIndex v) { return z.contains(v); });
    if (avoids_z && (!best || p.nodes.size() < best->nodes.size())) best = &p;
  }
  if (!best) throw PreconditionError("every witness path passes through Z");

  const auto& p = best->nodes;
  std::vector<NamedEdge> forward;
  std::vector<NamedEdge> reversed;
  for (std::size_t i = 1; i < p.size(); ++i) {
    forward.push_back({g.name(p[i - 1]), g.name(p[i])});
    if (i == 1) reversed.push_back({g.name(p[1]), g.name(p[0])});
    else reversed.push_back({g.name(p[i - 1]), g.name(p[i])});
  }
  NonIdentifiabilityWitness w{p, path_sem(g, forward, coefficient), path_sem(g, reversed, coefficient)};
  w.observational_gap =
      (observational_law(w.forward).cov - observational_law(w.reversed).cov).cwiseAbs().maxCoeff();
  const VectorXd ones = VectorXd::Ones(static_cast<Index>(x.size()));
  const VectorXd e1 = interventional_conditional(w.forward, x, y, z).bx * ones;
  const VectorXd e2 = interventional_conditional(w.reversed, x, y, z).bx * ones;
  w.effect_gap = (e1 - e2).cwiseAbs().maxCoeff();
  return w;
}

}  // namespace cadjust
