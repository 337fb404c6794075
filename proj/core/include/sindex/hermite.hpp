#pragma once

#include <Eigen/Dense>

namespace sindex {

/// Value of the normalized (probabilists') Hermite polynomial h_j at xi,
/// via the stable three-term recurrence
///   h_{j+1}(xi) = (xi h_j(xi) - sqrt(j) h_{j-1}(xi)) / sqrt(j+1).
/// Degrees above 64 are rejected.
double hermite_eval(int degree, double xi);

/// Single-pass evaluation of h_0..h_m at xi.
Eigen::VectorXd hermite_eval_all(int max_degree, double xi);

/// Default expansion order floor((ln n)^{2/3}), clamped to at least 1.
int default_degree(Eigen::Index n);

/// Nodes and weights integrating against the standard normal density:
/// sum_i w_i f(x_i) ~ E f(xi), xi ~ N(0,1). Weights sum to one.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Golub-Welsch rule on the probabilists' recurrence (2 to 128 nodes).
QuadratureRule gauss_hermite_rule(int n_nodes);

/// Gauss-Legendre rule on [a, b] (plain Lebesgue weight).
QuadratureRule gauss_legendre_rule(int n_nodes, double a, double b);

enum class Mu1Source { KnownSigma, EstimatedSigma };

/// Hermite expansion of the link: mu[j] multiplies h_j, with mu[1] pinned to
/// the pilot value rather than re-estimated.
struct HermiteCoeffs {
  Eigen::VectorXd mu;  // length degree + 1
  int degree = 0;
  Eigen::VectorXd tau_hat;
  Mu1Source mu1_source = Mu1Source::KnownSigma;

  /// Restriction to a smaller expansion order.
  HermiteCoeffs truncated(int m) const;
};

/// Empirical coefficients mu_j = mean_i y_i h_j(<x_i, tau_hat>) for j != 1;
/// mu_1 is inserted from the pilot.
HermiteCoeffs estimate_coeffs(const Eigen::MatrixXd& X22, const Eigen::VectorXd& y22,
                              const Eigen::VectorXd& tau_hat, double mu1, int degree,
                              Mu1Source source = Mu1Source::KnownSigma);

/// g_m(xi) = sum_j mu[j] h_j(xi).
double link_estimate(const HermiteCoeffs& coeffs, double xi);

}  // namespace sindex
