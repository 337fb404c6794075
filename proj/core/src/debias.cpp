#include "sindex/debias.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sindex/stats.hpp"

namespace sindex {

SplitPlan SplitPlan::halves(Eigen::Index n_total) {
  if (n_total < 4) throw std::invalid_argument("split needs at least 4 rows");
  SplitPlan plan;
  plan.n_total = n_total;
  plan.s1_begin = 0;
  plan.s1_len = n_total / 2;
  plan.s2_begin = plan.s1_len;
  plan.s2_len = n_total - plan.s1_len;
  plan.s21_begin = plan.s2_begin;
  plan.s21_len = plan.s2_len / 2;
  plan.s22_begin = plan.s21_begin + plan.s21_len;
  plan.s22_len = plan.s2_len - plan.s21_len;
  return plan;
}

namespace {

Eigen::VectorXd project_out(const Eigen::MatrixXd& X, const Eigen::VectorXd& gamma,
                            Eigen::Index k) {
  const Eigen::Index p = X.cols();
  if (k < 0 || k >= p) throw std::invalid_argument("residuals: coordinate out of range");
  if (gamma.size() != p - 1)
    throw std::invalid_argument("residuals: gamma must have p-1 entries");
  Eigen::VectorXd r = X.col(k);
  if (k > 0) r.noalias() -= X.leftCols(k) * gamma.head(k);
  if (k + 1 < p) r.noalias() -= X.rightCols(p - k - 1) * gamma.tail(p - 1 - k);
  return r;
}

double checked_denominator(const Eigen::VectorXd& r, const Eigen::MatrixXd& X1,
                           Eigen::Index k) {
  const double denom = r.dot(X1.col(k));
  const double floor = 1e-8 * static_cast<double>(X1.rows());
  if (std::abs(denom) < floor) {
    std::ostringstream msg;
    msg << "debias: degenerate denominator for coordinate " << (k + 1)
        << " (|sum r x_k| = " << std::abs(denom) << " < " << floor << ")";
    throw std::runtime_error(msg.str());
  }
  return denom;
}

DebiasEstimate assemble(Eigen::Index k, double beta_tilde, double se, double level,
                        DebiasMethod method, double denom, int degree = 0) {
  DebiasEstimate est;
  est.k = k;
  est.beta_tilde = beta_tilde;
  est.se = se;
  est.level = level;
  est.method = method;
  est.degree = degree;
  est.denominator = denom;
  std::tie(est.ci_lo, est.ci_hi) = confidence_interval(beta_tilde, se, level);
  return est;
}

DebiasEstimate debias_with_residuals(const Eigen::MatrixXd& X1,
                                     const Eigen::VectorXd& y1,
                                     const Eigen::VectorXd& r,
                                     const Eigen::VectorXd& beta_hat, Eigen::Index k,
                                     double level, DebiasMethod method) {
  if (r.size() != X1.rows())
    throw std::invalid_argument("debias: residual length does not match rows");
  if (beta_hat.size() != X1.cols())
    throw std::invalid_argument("debias: pilot dimension does not match design");
  const double denom = checked_denominator(r, X1, k);
  const Eigen::VectorXd zhat = y1 - X1 * beta_hat;
  const double beta_tilde = beta_hat(k) + r.dot(zhat) / denom;
  const double se =
      std::sqrt(zhat.array().square().matrix().dot(r.array().square().matrix())) /
      std::abs(denom);
  return assemble(k, beta_tilde, se, level, method, denom);
}

}  // namespace

Eigen::VectorXd residuals_known(const Eigen::MatrixXd& X1, const Eigen::VectorXd& gamma,
                                Eigen::Index k) {
  return project_out(X1, gamma, k);
}

Eigen::VectorXd residuals_estimated(const Eigen::MatrixXd& X1,
                                    const Eigen::VectorXd& gamma_hat, Eigen::Index k) {
  return project_out(X1, gamma_hat, k);
}

double variance_estimate(const Eigen::VectorXd& resid_r, const Eigen::VectorXd& resid_z,
                         const Eigen::MatrixXd& X1, Eigen::Index k) {
  if (resid_r.size() != resid_z.size() || resid_r.size() != X1.rows())
    throw std::invalid_argument("variance_estimate: length mismatch");
  if (resid_r.size() < 2)
    throw std::invalid_argument("variance_estimate: need at least 2 rows");
  const double denom = checked_denominator(resid_r, X1, k);
  return std::sqrt(resid_z.array().square().matrix().dot(
             resid_r.array().square().matrix())) /
         std::abs(denom);
}

std::pair<double, double> confidence_interval(double beta_tilde, double se,
                                              double level) {
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("confidence level must lie in (0, 1)");
  const double z = normal_quantile(0.5 * (1.0 + level));
  return {beta_tilde - z * se, beta_tilde + z * se};
}

DebiasEstimate debias_known(const Eigen::MatrixXd& X1, const Eigen::VectorXd& y1,
                            const Eigen::VectorXd& r, const Eigen::VectorXd& beta_hat,
                            Eigen::Index k, double level) {
  return debias_with_residuals(X1, y1, r, beta_hat, k, level,
                               DebiasMethod::KnownSigma);
}

DebiasEstimate debias_unknown(const Eigen::MatrixXd& X1, const Eigen::VectorXd& y1,
                              const Eigen::VectorXd& gamma_hat,
                              const Eigen::VectorXd& beta_hat, Eigen::Index k,
                              double level) {
  const Eigen::VectorXd r = residuals_estimated(X1, gamma_hat, k);
  return debias_with_residuals(X1, y1, r, beta_hat, k, level,
                               DebiasMethod::NodewiseSigma);
}

MultiDebiasEstimate debias_multivariate(const Eigen::MatrixXd& X1,
                                        const Eigen::VectorXd& y1,
                                        const Eigen::MatrixXd& R_hat,
                                        const Eigen::VectorXd& beta_hat,
                                        const std::vector<Eigen::Index>& K) {
  const Eigen::Index n = X1.rows();
  const Eigen::Index m = static_cast<Eigen::Index>(K.size());
  if (m < 1) throw std::invalid_argument("debias_multivariate: empty coordinate set");
  if (R_hat.rows() != n || R_hat.cols() != m)
    throw std::invalid_argument("debias_multivariate: residual matrix shape mismatch");

  Eigen::MatrixXd Xk(n, m);
  Eigen::VectorXd beta_k(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    if (K[j] < 0 || K[j] >= X1.cols())
      throw std::invalid_argument("debias_multivariate: coordinate out of range");
    Xk.col(j) = X1.col(K[j]);
    beta_k(j) = beta_hat(K[j]);
  }

  const Eigen::MatrixXd A = R_hat.transpose() * Xk / static_cast<double>(n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (!(smin > 0.0) || smax / smin > 1e8) {
    std::ostringstream msg;
    msg << "debias_multivariate: ill-conditioned R^T X_K (condition estimate "
        << (smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity())
        << ")";
    throw std::runtime_error(msg.str());
  }

  const Eigen::VectorXd zhat = y1 - X1 * beta_hat;
  MultiDebiasEstimate out;
  out.coords = K;
  out.beta_tilde =
      beta_k + svd.solve(R_hat.transpose() * zhat / static_cast<double>(n));

  // Theta = (1/n) sum z_i^2 R_i R_i^T, assembled as M^T M / n with the rows
  // of R scaled by z_i.
  const Eigen::MatrixXd M = R_hat.array().colwise() * zhat.array();
  const Eigen::MatrixXd theta = M.transpose() * M / static_cast<double>(n);
  const Eigen::MatrixXd a_inv_theta = svd.solve(theta);
  Eigen::MatrixXd cov = svd.solve(a_inv_theta.transpose()) / static_cast<double>(n);
  out.covariance = 0.5 * (cov + cov.transpose());
  return out;
}

PilotDirection pilot_direction_known(const Eigen::VectorXd& beta_hat,
                                     const Covariance& cov) {
  if (beta_hat.size() != cov.dim())
    throw std::invalid_argument("pilot_direction: dimension mismatch");
  const double mu1 = std::sqrt(beta_hat.dot(cov.sigma * beta_hat));
  if (!(mu1 >= 1e-10))
    throw std::runtime_error("pilot_direction: zero pilot estimate, no direction");
  PilotDirection out;
  out.mu1 = mu1;
  out.tau_hat = beta_hat / mu1;
  return out;
}

PilotDirection pilot_direction_estimated(const Eigen::VectorXd& beta_hat,
                                         const Eigen::MatrixXd& X2) {
  if (beta_hat.size() != X2.cols())
    throw std::invalid_argument("pilot_direction: dimension mismatch");
  if (X2.rows() < 1) throw std::invalid_argument("pilot_direction: empty sample");
  const double n2 = static_cast<double>(X2.rows());
  const double mu1 = (X2 * beta_hat).norm() / std::sqrt(n2);
  if (!(mu1 >= 1e-10))
    throw std::runtime_error("pilot_direction: zero pilot estimate, no direction");
  PilotDirection out;
  out.mu1 = mu1;
  out.tau_hat = beta_hat / mu1;
  return out;
}

DebiasEstimate debias_efficient(const Eigen::MatrixXd& X1, const Eigen::VectorXd& y1,
                                const Eigen::VectorXd& r, const Eigen::VectorXd& beta_hat,
                                const HermiteCoeffs& coeffs, Eigen::Index k,
                                double level) {
  if (r.size() != X1.rows())
    throw std::invalid_argument("debias: residual length does not match rows");
  if (coeffs.tau_hat.size() != X1.cols())
    throw std::invalid_argument("debias: tau_hat dimension does not match design");
  const double denom = checked_denominator(r, X1, k);

  const Eigen::VectorXd xi = X1 * coeffs.tau_hat;
  Eigen::VectorXd ehat(y1.size());
  for (Eigen::Index i = 0; i < y1.size(); ++i)
    ehat(i) = y1(i) - link_estimate(coeffs, xi(i));

  const double beta_tilde = beta_hat(k) + r.dot(ehat) / denom;
  const double se =
      std::sqrt(ehat.array().square().matrix().dot(r.array().square().matrix())) /
      std::abs(denom);
  const DebiasMethod method = coeffs.mu1_source == Mu1Source::KnownSigma
                                  ? DebiasMethod::HermiteKnown
                                  : DebiasMethod::HermiteEstimated;
  return assemble(k, beta_tilde, se, level, method, denom, coeffs.degree);
}

DebiasEstimate crossfit_average(const DebiasEstimate& a, const DebiasEstimate& b) {
  if (a.k != b.k)
    throw std::invalid_argument("crossfit_average: estimates target different coordinates");
  if (a.level != b.level)
    throw std::invalid_argument("crossfit_average: estimates at different levels");
  const double beta = 0.5 * (a.beta_tilde + b.beta_tilde);
  const double se = 0.5 * std::sqrt(a.se * a.se + b.se * b.se);
  return assemble(a.k, beta, se, a.level, DebiasMethod::CrossfitAverage,
                  0.5 * (a.denominator + b.denominator));
}

}  // namespace sindex
