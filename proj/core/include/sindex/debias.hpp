#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sindex/covariance.hpp"
#include "sindex/hermite.hpp"

namespace sindex {

/// Contiguous sample-split bookkeeping over rows [0, n_total):
/// s1 is the evaluation half, s2 the estimation half, with s2 further split
/// into s21 (pilot) and s22 (coefficient estimation). For odd counts the
/// floor goes to the earlier block.
struct SplitPlan {
  Eigen::Index n_total = 0;
  Eigen::Index s1_begin = 0, s1_len = 0;
  Eigen::Index s2_begin = 0, s2_len = 0;
  Eigen::Index s21_begin = 0, s21_len = 0;
  Eigen::Index s22_begin = 0, s22_len = 0;

  static SplitPlan halves(Eigen::Index n_total);
};

enum class DebiasMethod {
  KnownSigma,
  NodewiseSigma,
  HermiteKnown,
  HermiteEstimated,
  CrossfitAverage,
};

struct DebiasEstimate {
  Eigen::Index k = 0;  // target coordinate (0-based)
  double beta_tilde = 0.0;
  double se = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;
  double level = 0.95;
  DebiasMethod method = DebiasMethod::KnownSigma;
  int degree = 0;            // Hermite methods only
  double denominator = 0.0;  // sum_i r_i x_ik, kept for diagnostics
};

/// r_i = x_ik - <gamma, x_{i,-k}> for the population projection gamma.
Eigen::VectorXd residuals_known(const Eigen::MatrixXd& X1, const Eigen::VectorXd& gamma,
                                Eigen::Index k);

/// Same construction with an estimated gamma_hat (fit on rows disjoint from X1).
Eigen::VectorXd residuals_estimated(const Eigen::MatrixXd& X1,
                                    const Eigen::VectorXd& gamma_hat, Eigen::Index k);

/// se = sqrt(sum_i resid_z_i^2 resid_r_i^2) / |sum_i resid_r_i x_ik|.
double variance_estimate(const Eigen::VectorXd& resid_r, const Eigen::VectorXd& resid_z,
                         const Eigen::MatrixXd& X1, Eigen::Index k);

/// beta_tilde +- z_level * se.
std::pair<double, double> confidence_interval(double beta_tilde, double se,
                                              double level = 0.95);

/// One-step correction: beta_hat_k + sum r_i (y_i - <x_i, beta_hat>) / sum r_i x_ik,
/// with r the population residuals.
DebiasEstimate debias_known(const Eigen::MatrixXd& X1, const Eigen::VectorXd& y1,
                            const Eigen::VectorXd& r, const Eigen::VectorXd& beta_hat,
                            Eigen::Index k, double level = 0.95);

/// Unknown-covariance variant: residuals from a node-wise gamma_hat estimated
/// on the other subsample.
DebiasEstimate debias_unknown(const Eigen::MatrixXd& X1, const Eigen::VectorXd& y1,
                              const Eigen::VectorXd& gamma_hat,
                              const Eigen::VectorXd& beta_hat, Eigen::Index k,
                              double level = 0.95);

struct MultiDebiasEstimate {
  std::vector<Eigen::Index> coords;
  Eigen::VectorXd beta_tilde;
  Eigen::MatrixXd covariance;  // estimated asymptotic covariance scaled by 1/n
};

/// Joint debiasing of the coordinates K with residual matrix R_hat (one
/// column per coordinate): beta_K + (R^T X_K)^{-1} R^T (y - X beta_hat).
MultiDebiasEstimate debias_multivariate(const Eigen::MatrixXd& X1,
                                        const Eigen::VectorXd& y1,
                                        const Eigen::MatrixXd& R_hat,
                                        const Eigen::VectorXd& beta_hat,
                                        const std::vector<Eigen::Index>& K);

struct PilotDirection {
  double mu1 = 0.0;
  Eigen::VectorXd tau_hat;
};

/// mu1 = ||Sigma^{1/2} beta_hat||_2 and tau_hat = beta_hat / mu1.
PilotDirection pilot_direction_known(const Eigen::VectorXd& beta_hat,
                                     const Covariance& cov);

/// Estimated-covariance variant: mu1 = sqrt(beta^T Sigma_hat beta) with
/// Sigma_hat the second-moment matrix of the given rows, computed as
/// ||X2 beta||_2 / sqrt(n2) without forming Sigma_hat.
PilotDirection pilot_direction_estimated(const Eigen::VectorXd& beta_hat,
                                         const Eigen::MatrixXd& X2);

/// Efficient variant subtracting the degree-m link estimate instead of the
/// linear fit; the variance plug-in uses the Hermite residuals.
DebiasEstimate debias_efficient(const Eigen::MatrixXd& X1, const Eigen::VectorXd& y1,
                                const Eigen::VectorXd& r, const Eigen::VectorXd& beta_hat,
                                const HermiteCoeffs& coeffs, Eigen::Index k = 0,
                                double level = 0.95);

/// Average of two role-swapped estimates; the halves are independent, so the
/// averaged standard error is sqrt(se_a^2 + se_b^2) / 2.
DebiasEstimate crossfit_average(const DebiasEstimate& a, const DebiasEstimate& b);

}  // namespace sindex
