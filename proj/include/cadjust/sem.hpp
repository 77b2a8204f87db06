#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cadjust/criterion.hpp"
#include "cadjust/graph.hpp"

namespace cadjust {

/// Linear SEM V = B V + e over a DAG. coef(child, parent) is the edge
/// coefficient; noise variances must be positive.
class LinearSEM {
 public:
  LinearSEM(MixedGraph dag, Eigen::MatrixXd coef, Eigen::VectorXd noise_var);

  /// Coefficients uniform on (lo, hi), unit noise.
  static LinearSEM random(const MixedGraph& dag, std::mt19937_64& rng, double lo = 0.1, double hi = 0.9);
  /// Every edge gets `c`, noise unit.
  static LinearSEM constant(const MixedGraph& dag, double c);

  const MixedGraph& dag() const { return dag_; }
  const Eigen::MatrixXd& coef() const { return coef_; }
  const Eigen::VectorXd& noise_var() const { return noise_; }

  /// Same coefficients, noise chosen so every variable has variance 1.
  /// Throws std::domain_error when some node would need non-positive noise.
  LinearSEM standardized() const;

 private:
  MixedGraph dag_;
  Eigen::MatrixXd coef_;
  Eigen::VectorXd noise_;
};

/// Joint Gaussian over `vars` (node indices of the SEM's DAG).
struct Gaussian {
  std::vector<NodeIndex> vars;
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

Gaussian observational_law(const LinearSEM& sem);

/// Covariance by Wright's path tracing: sum over collider-free simple paths
/// of coefficient products. Valid for standardized SEMs.
double wright_covariance(const LinearSEM& sem, NodeIndex u, NodeIndex v);

/// Law under do(X = x): X rows of B cleared, X noise 0, X means x. The
/// intervened coordinates are point masses. `values` follows X's order.
Gaussian interventional_law(const LinearSEM& sem, const NodeSet& x, const Eigen::VectorXd& values);

/// Conditional law of the remaining variables given `on` = values.
Gaussian condition(const Gaussian& law, const std::vector<NodeIndex>& on, const Eigen::VectorXd& values);

/// E[Y | do(X = x), Z = z] = bx x + bz z, with conditional covariance.
struct AffineLaw {
  Eigen::MatrixXd bx;
  Eigen::MatrixXd bz;
  Eigen::MatrixXd cov;
};

AffineLaw interventional_conditional(const LinearSEM& sem, const NodeSet& x, const NodeSet& y, const NodeSet& z);

/// Law of y given (x, z) obtained by adjusting for S:
/// the integral of f(y | x, z, s) f(s | z) over s.
AffineLaw adjustment_formula_law(const LinearSEM& sem, const Query& q);

struct IdentityGap {
  double mean_gap = 0.0;
  double cov_gap = 0.0;
};

/// Max absolute differences between the two affine laws above.
IdentityGap adjustment_identity_gap(const LinearSEM& sem, const Query& q);

struct IdentityReport {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double max_mean_gap = 0.0;
  double max_cov_gap = 0.0;
  std::vector<IdentityGap> per_trial;

  bool holds(double tol = 1e-8) const { return max_mean_gap < tol && max_cov_gap < tol; }
};

/// Random coefficient draws on (lo, hi), unit noise, mt19937_64(seed).
IdentityReport verify_adjustment_identity(const MixedGraph& dag, const Query& q, std::size_t trials = 100,
                                          std::uint64_t seed = 1, double lo = 0.1, double hi = 0.9);

struct NonIdentifiabilityWitness {
  std::vector<NodeIndex> path;
  LinearSEM forward;
  LinearSEM reversed;
  double observational_gap = 0.0;
  double effect_gap = 0.0;
};

/// Two path-only SEMs that agree observationally and disagree on
/// E[Y | do(X = 1), Z = 0]: the witness path oriented causally, and with its
/// first edge reversed. Throws PreconditionError when the query is amenable
/// or no witness path avoids Z.
NonIdentifiabilityWitness nonidentifiability_witness(const MixedGraph& g, const NodeSet& x, const NodeSet& y,
                                                     const NodeSet& z, double coefficient = 0.5);

}  // namespace cadjust
