#include "sindex/covariance.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sindex {

CovarianceModel CovarianceModel::identity(Eigen::Index p) {
  if (p < 1) throw std::invalid_argument("covariance dimension must be >= 1");
  return CovarianceModel(Kind::Identity, p, 0.0, Eigen::MatrixXd());
}

CovarianceModel CovarianceModel::ar1(Eigen::Index p, double rho) {
  if (p < 1) throw std::invalid_argument("covariance dimension must be >= 1");
  if (!(rho > -1.0 && rho < 1.0))
    throw std::invalid_argument("AR(1) parameter must lie in (-1, 1)");
  return CovarianceModel(Kind::Ar1, p, rho, Eigen::MatrixXd());
}

CovarianceModel CovarianceModel::explicit_matrix(Eigen::MatrixXd sigma) {
  if (sigma.rows() < 1 || sigma.rows() != sigma.cols())
    throw std::invalid_argument("explicit covariance must be square");
  const double scale = sigma.cwiseAbs().maxCoeff();
  const double asym = (sigma - sigma.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, scale))
    throw std::invalid_argument("explicit covariance must be symmetric");
  const Eigen::Index p = sigma.rows();
  return CovarianceModel(Kind::Explicit, p, 0.0, std::move(sigma));
}

namespace {

Eigen::MatrixXd ar1_sigma(Eigen::Index p, double rho) {
  Eigen::MatrixXd sigma(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    sigma(i, i) = 1.0;
    double v = 1.0;
    for (Eigen::Index j = i + 1; j < p; ++j) {
      v *= rho;
      sigma(i, j) = v;
      sigma(j, i) = v;
    }
  }
  return sigma;
}

// The AR(1) process x_0 = g_0, x_j = rho x_{j-1} + sqrt(1-rho^2) g_j has
// covariance rho^|i-j|; its transfer matrix is lower triangular with positive
// diagonal, hence it is the (unique) Cholesky factor.
Eigen::MatrixXd ar1_chol(Eigen::Index p, double rho) {
  const double c = std::sqrt(1.0 - rho * rho);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    double v = (i == 0) ? 1.0 : std::pow(rho, static_cast<double>(i));
    b(i, 0) = v;
    for (Eigen::Index j = 1; j <= i; ++j)
      b(i, j) = c * std::pow(rho, static_cast<double>(i - j));
  }
  if (p > 0) b(0, 0) = 1.0;
  return b;
}

}  // namespace

Covariance build_covariance(const CovarianceModel& model) {
  const Eigen::Index p = model.dim();
  switch (model.kind()) {
    case CovarianceModel::Kind::Identity:
      return Covariance{model, Eigen::MatrixXd::Identity(p, p),
                        Eigen::MatrixXd::Identity(p, p)};
    case CovarianceModel::Kind::Ar1:
      return Covariance{model, ar1_sigma(p, model.rho()),
                        ar1_chol(p, model.rho())};
    case CovarianceModel::Kind::Explicit: {
      Eigen::LLT<Eigen::MatrixXd> llt(model.explicit_sigma());
      if (llt.info() != Eigen::Success) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
            model.explicit_sigma(), Eigen::EigenvaluesOnly);
        std::ostringstream msg;
        msg << "explicit covariance is not positive definite; smallest "
               "eigenvalue = "
            << es.eigenvalues().minCoeff();
        throw std::invalid_argument(msg.str());
      }
      return Covariance{model, model.explicit_sigma(),
                        Eigen::MatrixXd(llt.matrixL())};
    }
  }
  throw std::logic_error("unreachable covariance kind");
}

PopulationGamma population_gamma(const Covariance& cov, Eigen::Index k) {
  const Eigen::Index p = cov.dim();
  if (k < 0 || k >= p) throw std::invalid_argument("coordinate out of range");
  PopulationGamma out;
  out.gamma = Eigen::VectorXd::Zero(p - 1);

  switch (cov.model.kind()) {
    case CovarianceModel::Kind::Identity:
      out.e_r2 = 1.0;
      return out;
    case CovarianceModel::Kind::Ar1: {
      // The AR(1) precision matrix is tridiagonal, so the projection touches
      // only the neighbours of k. Reduced indexing: coordinate k-1 keeps
      // index k-1, coordinate k+1 becomes index k.
      const double rho = cov.model.rho();
      if (p == 1) {
        out.e_r2 = 1.0;
        return out;
      }
      const bool has_left = k > 0;
      const bool has_right = k < p - 1;
      if (has_left && has_right) {
        const double w = rho / (1.0 + rho * rho);
        out.gamma(k - 1) = w;
        out.gamma(k) = w;
        out.e_r2 = (1.0 - rho * rho) / (1.0 + rho * rho);
      } else {
        // endpoint: single neighbour
        out.gamma(has_left ? k - 1 : 0) = rho;
        out.e_r2 = 1.0 - rho * rho;
      }
      return out;
    }
    case CovarianceModel::Kind::Explicit: {
      const Eigen::MatrixXd& sigma = cov.sigma;
      Eigen::MatrixXd rest(p - 1, p - 1);
      Eigen::VectorXd cross(p - 1);
      for (Eigen::Index i = 0, ri = 0; i < p; ++i) {
        if (i == k) continue;
        cross(ri) = sigma(i, k);
        for (Eigen::Index j = 0, rj = 0; j < p; ++j) {
          if (j == k) continue;
          rest(ri, rj) = sigma(i, j);
          ++rj;
        }
        ++ri;
      }
      Eigen::LDLT<Eigen::MatrixXd> ldlt(rest);
      if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        throw std::runtime_error(
            "population_gamma: Sigma_{-k,-k} is numerically singular");
      out.gamma = ldlt.solve(cross);
      out.e_r2 = sigma(k, k) - cross.dot(out.gamma);
      if (!(out.e_r2 > 0.0))
        throw std::runtime_error(
            "population_gamma: nonpositive residual second moment");
      return out;
    }
  }
  throw std::logic_error("unreachable covariance kind");
}

}  // namespace sindex
