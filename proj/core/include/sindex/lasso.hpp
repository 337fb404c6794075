#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sindex/rng.hpp"

namespace sindex {

struct LassoOptions {
  double tol_scale = 1e-8;      // sweep stop: max |delta beta| <= tol_scale * max(1, ||y||_inf)
  int max_sweeps = 100000;
  double kkt_tol_scale = 1e-7;  // kkt_tol = kkt_tol_scale * max(1, ||X^T y||_inf / n)
  bool record_objective = false;
  bool check_inputs = true;     // finite-ness scan of X and y
};

struct LassoFit {
  Eigen::VectorXd coefficients;
  double lambda = 0.0;
  int iterations = 0;  // coordinate sweeps
  double max_kkt_violation = 0.0;
  bool converged = false;
  std::vector<double> objective_path;  // per sweep, when recorded
};

/// Minimizes (1/2n) ||y - X beta||_2^2 + lambda ||beta||_1 by cyclic
/// coordinate descent with active-set iteration.
LassoFit lasso_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                   const LassoOptions& opts = {},
                   const Eigen::VectorXd* warm_start = nullptr);

/// Warm-started fits along a descending lambda sequence.
std::vector<LassoFit> lasso_path(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                 const std::vector<double>& lambdas,
                                 const LassoOptions& opts = {});

/// ||X^T y||_inf / n: the smallest lambda with an all-zero solution.
double lasso_lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

/// Geometric grid of `size` values from lambda_max down to factor*lambda_max.
std::vector<double> lambda_grid(double lambda_max, int size, double factor = 1e-3);

struct CvResult {
  std::vector<double> lambda_grid;  // descending
  std::vector<double> cv_errors;    // mean held-out squared error per lambda
  double lambda_star = 0.0;
  LassoFit fit_at_star;             // refit on all rows
};

/// K-fold cross-validation over a geometric grid anchored at lambda_max.
/// Folds are a random partition drawn from `rng`; ties in the CV minimum are
/// broken toward the larger lambda.
CvResult lasso_cv(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int n_folds,
                  int grid_size, Stream& rng, const LassoOptions& opts = {});

/// Lasso regression of column k on the remaining columns.
Eigen::VectorXd nodewise_lasso(const Eigen::MatrixXd& X, Eigen::Index k,
                               double lambda_k, const LassoOptions& opts = {});

struct NodewiseLambda {
  double lambda = 0.0;
  bool satisfied = false;  // false when no grid value meets the constraint
};

/// Largest grid lambda whose node-wise residuals r(lambda) satisfy
///   max_{j != k} |sum_i r_i x_ij| / sqrt(sum_i r_i^2) < sqrt(log p),
/// scanning the usual descending geometric grid with warm starts. If no grid
/// value qualifies, returns the grid maximum flagged unsatisfied.
NodewiseLambda tune_nodewise_lambda(const Eigen::MatrixXd& X, Eigen::Index k,
                                    const LassoOptions& opts = {});

}  // namespace sindex
