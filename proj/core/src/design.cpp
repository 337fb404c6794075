#include "sindex/design.hpp"

#include <cmath>
#include <stdexcept>

namespace sindex {

IndexVector make_tau(const TauPattern& pattern, const Covariance& cov) {
  const Eigen::Index p = cov.dim();
  const Eigen::Index s = pattern.s;
  if (s < 1 || s > p)
    throw std::invalid_argument("tau pattern sparsity must satisfy 1 <= s <= p");

  Eigen::VectorXd raw = Eigen::VectorXd::Zero(p);
  for (Eigen::Index j = 0; j < s; ++j) raw(j) = static_cast<double>(s - j);

  const double norm = std::sqrt(raw.dot(cov.sigma * raw));
  IndexVector out;
  out.tau = raw / norm;
  out.s = s;
  out.normalization = std::sqrt(out.tau.dot(cov.sigma * out.tau));
  return out;
}

namespace {

// Applies the AR(1) Cholesky factor in place via the defining recursion;
// O(p) instead of the O(p^2) triangular product.
void apply_ar1_chol(double rho, Eigen::VectorXd& g) {
  const double c = std::sqrt(1.0 - rho * rho);
  double prev = g(0);
  for (Eigen::Index j = 1; j < g.size(); ++j) {
    prev = rho * prev + c * g(j);
    g(j) = prev;
  }
}

void fill_standard_normal(Eigen::VectorXd& g, Stream& rng) {
  for (Eigen::Index j = 0; j < g.size(); ++j) g(j) = rng.normal();
}

}  // namespace

Eigen::MatrixXd sample_gaussian(Eigen::Index n, const Covariance& cov, Stream& rng) {
  if (n < 1) throw std::invalid_argument("sample size must be >= 1");
  const Eigen::Index p = cov.dim();
  Eigen::MatrixXd x(n, p);
  Eigen::VectorXd g(p);
  for (Eigen::Index i = 0; i < n; ++i) {
    fill_standard_normal(g, rng);
    switch (cov.model.kind()) {
      case CovarianceModel::Kind::Identity:
        break;
      case CovarianceModel::Kind::Ar1:
        apply_ar1_chol(cov.model.rho(), g);
        break;
      case CovarianceModel::Kind::Explicit:
        g = cov.chol.triangularView<Eigen::Lower>() * g;
        break;
    }
    x.row(i) = g.transpose();
  }
  return x;
}

Eigen::MatrixXd sample_elliptical(Eigen::Index n, const Covariance& cov,
                                  const RadialLaw& radial, Stream& rng) {
  if (n < 1) throw std::invalid_argument("sample size must be >= 1");
  const Eigen::Index p = cov.dim();
  Eigen::MatrixXd x(n, p);
  Eigen::VectorXd g(p), h(p);
  for (Eigen::Index i = 0; i < n; ++i) {
    fill_standard_normal(g, rng);
    g /= g.norm();  // uniform on the unit sphere
    double v = 0.0;
    switch (radial.kind) {
      case RadialLaw::Kind::ChiP:
        fill_standard_normal(h, rng);
        v = h.norm();
        break;
      case RadialLaw::Kind::ScaledUniform:
        v = std::sqrt(3.0 * static_cast<double>(p)) * rng.uniform_co();
        break;
    }
    switch (cov.model.kind()) {
      case CovarianceModel::Kind::Identity:
        break;
      case CovarianceModel::Kind::Ar1:
        apply_ar1_chol(cov.model.rho(), g);
        break;
      case CovarianceModel::Kind::Explicit:
        g = cov.chol.triangularView<Eigen::Lower>() * g;
        break;
    }
    x.row(i) = (v * g).transpose();
  }
  return x;
}

Eigen::VectorXd generate_responses(const Eigen::MatrixXd& X, const IndexVector& tau,
                                   const LinkModel& link, Stream& rng) {
  if (X.cols() != tau.tau.size())
    throw std::invalid_argument("tau dimension does not match design");
  const Eigen::VectorXd index = X * tau.tau;
  Eigen::VectorXd y(index.size());
  for (Eigen::Index i = 0; i < index.size(); ++i) {
    const double t = index(i);
    switch (link.kind) {
      case LinkModel::Kind::SignPlusNoise: {
        const double sgn = (t > 0.0) ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
        y(i) = sgn + (link.sigma > 0.0 ? link.sigma * rng.normal() : 0.0);
        break;
      }
      case LinkModel::Kind::ExpMultiplicative:
        y(i) = rng.exponential() * std::exp(t);
        break;
      case LinkModel::Kind::ScaledSine:
        y(i) = link.amplitude * std::sin(t) +
               (link.sigma > 0.0 ? link.sigma * rng.normal() : 0.0);
        break;
      case LinkModel::Kind::LinearPlusNoise:
        y(i) = t + (link.sigma > 0.0 ? link.sigma * rng.normal() : 0.0);
        break;
    }
  }
  return y;
}

Eigen::MatrixXd center_columns(Eigen::MatrixXd X) {
  if (X.rows() < 2)
    throw std::invalid_argument("centering needs at least two rows");
  const Eigen::RowVectorXd means = X.colwise().mean();
  X.rowwise() -= means;
  return X;
}

}  // namespace sindex
