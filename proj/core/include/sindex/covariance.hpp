#pragma once

#include <Eigen/Dense>

namespace sindex {

/// Design covariance specification: identity, AR(1) with Sigma_ij = rho^|i-j|,
/// or an explicit symmetric positive definite matrix.
class CovarianceModel {
 public:
  enum class Kind { Identity, Ar1, Explicit };

  static CovarianceModel identity(Eigen::Index p);
  static CovarianceModel ar1(Eigen::Index p, double rho);
  static CovarianceModel explicit_matrix(Eigen::MatrixXd sigma);

  Kind kind() const { return kind_; }
  Eigen::Index dim() const { return p_; }
  double rho() const { return rho_; }
  const Eigen::MatrixXd& explicit_sigma() const { return sigma_; }

 private:
  CovarianceModel(Kind kind, Eigen::Index p, double rho, Eigen::MatrixXd sigma)
      : kind_(kind), p_(p), rho_(rho), sigma_(std::move(sigma)) {}

  Kind kind_;
  Eigen::Index p_;
  double rho_ = 0.0;
  Eigen::MatrixXd sigma_;
};

/// Realized covariance: dense Sigma together with a lower-triangular factor
/// satisfying chol * chol^T = sigma.
struct Covariance {
  CovarianceModel model;
  Eigen::MatrixXd sigma;
  Eigen::MatrixXd chol;

  Eigen::Index dim() const { return sigma.rows(); }
};

/// Materializes the covariance matrix and its Cholesky factor. For identity
/// and AR(1) models the factor is analytic; explicit matrices that are not
/// positive definite raise an error naming the offending eigenvalue.
Covariance build_covariance(const CovarianceModel& model);

struct PopulationGamma {
  Eigen::VectorXd gamma;  // coefficients of coordinate k regressed on the rest
  double e_r2 = 0.0;      // E r^2 = Sigma_kk - Sigma_{k,-k} gamma
};

/// Population-level L2 projection of coordinate k onto the remaining
/// coordinates: gamma solves Sigma_{-k,-k} gamma = Sigma_{-k,k}.
PopulationGamma population_gamma(const Covariance& cov, Eigen::Index k);

}  // namespace sindex
