#pragma once

#include <Eigen/Dense>

#include "sindex/covariance.hpp"
#include "sindex/rng.hpp"

namespace sindex {

/// Law of the radius in the elliptical representation x = v * B * U.
/// Both variants are normalized so that E v^2 = p, making E x x^T = Sigma.
struct RadialLaw {
  enum class Kind {
    ChiP,          // v = ||g||_2 for g ~ N(0, I_p); recovers N(0, Sigma)
    ScaledUniform  // v = sqrt(3p) * U, U ~ Uniform(0,1); subgaussian, non-Gaussian
  };
  Kind kind = Kind::ChiP;

  static RadialLaw chi_p() { return {Kind::ChiP}; }
  static RadialLaw scaled_uniform() { return {Kind::ScaledUniform}; }
};

/// Response model y = f(<x, tau>) for the supported link families.
struct LinkModel {
  enum class Kind { SignPlusNoise, ExpMultiplicative, ScaledSine, LinearPlusNoise };
  Kind kind = Kind::LinearPlusNoise;
  double amplitude = 1.0;  // ScaledSine scale
  double sigma = 0.0;      // additive noise sd (SignPlusNoise / ScaledSine / LinearPlusNoise)

  static LinkModel sign_plus_noise(double sigma) {
    return {Kind::SignPlusNoise, 1.0, sigma};
  }
  static LinkModel exp_multiplicative() { return {Kind::ExpMultiplicative, 1.0, 0.0}; }
  static LinkModel scaled_sine(double amplitude, double noise_sd = 0.1) {
    return {Kind::ScaledSine, amplitude, noise_sd};
  }
  static LinkModel linear_plus_noise(double sigma) {
    return {Kind::LinearPlusNoise, 1.0, sigma};
  }
};

/// Index direction normalized so that ||Sigma^{1/2} tau||_2 = 1.
struct IndexVector {
  Eigen::VectorXd tau;
  Eigen::Index s = 0;          // number of nonzero leading entries
  double normalization = 0.0;  // achieved ||Sigma^{1/2} tau||_2
};

/// Support pattern for the index vector: tau_j proportional to s - j + 1 on
/// the first s coordinates. SineTriangular is the fixed s = 10 variant used
/// with the sine link.
struct TauPattern {
  enum class Kind { Triangular, SineTriangular };
  Kind kind = Kind::Triangular;
  Eigen::Index s = 1;

  static TauPattern triangular(Eigen::Index s) { return {Kind::Triangular, s}; }
  static TauPattern sine_triangular() { return {Kind::SineTriangular, 10}; }
};

IndexVector make_tau(const TauPattern& pattern, const Covariance& cov);

/// n rows iid N(0, Sigma); draws consumed row by row.
Eigen::MatrixXd sample_gaussian(Eigen::Index n, const Covariance& cov, Stream& rng);

/// n rows iid from the elliptical law v * B * U with U uniform on the unit
/// sphere and v independent with the given radial law. With the ChiP radius
/// the output distribution equals N(0, Sigma).
Eigen::MatrixXd sample_elliptical(Eigen::Index n, const Covariance& cov,
                                  const RadialLaw& radial, Stream& rng);

/// y_i = f_i(<x_i, tau>) with noise drawn from `rng`, independent of X.
Eigen::VectorXd generate_responses(const Eigen::MatrixXd& X, const IndexVector& tau,
                                   const LinkModel& link, Stream& rng);

/// Removes sample column means: X - (1/n) 1 1^T X.
Eigen::MatrixXd center_columns(Eigen::MatrixXd X);

}  // namespace sindex
