#include "sindex/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sindex {

namespace {

double soft_threshold(double u, double lambda) {
  if (u > lambda) return u - lambda;
  if (u < -lambda) return u + lambda;
  return 0.0;
}

void require_finite(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  if (!y.allFinite()) throw std::invalid_argument("lasso: non-finite entry in y");
  if (!X.allFinite()) throw std::invalid_argument("lasso: non-finite entry in X");
}

// Cyclic coordinate descent with residual updates. One instance per design
// matrix; keeps beta/residual state across lambdas for warm-started paths.
class CoordinateDescent {
 public:
  CoordinateDescent(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                    const LassoOptions& opts)
      : X_(X), y_(y), opts_(opts), n_(X.rows()), p_(X.cols()) {
    if (n_ < 1 || p_ < 1)
      throw std::invalid_argument("lasso: empty design");
    if (y.size() != n_)
      throw std::invalid_argument("lasso: y length does not match X rows");
    if (opts.check_inputs) require_finite(X, y);
    col_ms_ = X.colwise().squaredNorm().transpose() / static_cast<double>(n_);
    tol_ = opts.tol_scale * std::max(1.0, y.lpNorm<Eigen::Infinity>());
    const double grad0 = (X.transpose() * y).lpNorm<Eigen::Infinity>() /
                         static_cast<double>(n_);
    kkt_tol_ = opts.kkt_tol_scale * std::max(1.0, grad0);
    beta_ = Eigen::VectorXd::Zero(p_);
    resid_ = y;
  }

  void warm_start(const Eigen::VectorXd& beta) {
    if (beta.size() != p_)
      throw std::invalid_argument("lasso: warm start of wrong dimension");
    beta_ = beta;
    resid_ = y_ - X_ * beta_;
  }

  LassoFit run(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lasso: lambda must be > 0");
    int sweeps = 0;
    bool converged = false;
    double kkt = std::numeric_limits<double>::infinity();
    std::vector<double> objective;

    auto record = [&] {
      if (opts_.record_objective) objective.push_back(objective_value(lambda));
    };

    std::vector<Eigen::Index> active;
    while (sweeps < opts_.max_sweeps) {
      const double delta = sweep_all(lambda);
      ++sweeps;
      record();
      if (delta <= tol_) {
        kkt = kkt_violation(lambda);
        if (kkt <= kkt_tol_) {
          converged = true;
          break;
        }
        continue;
      }
      collect_active(active);
      while (sweeps < opts_.max_sweeps) {
        const double da = sweep_subset(lambda, active);
        ++sweeps;
        record();
        if (da <= tol_) break;
      }
    }
    if (converged && !std::isfinite(kkt)) kkt = kkt_violation(lambda);
    if (!converged) kkt = kkt_violation(lambda);

    LassoFit fit;
    fit.coefficients = beta_;
    fit.lambda = lambda;
    fit.iterations = sweeps;
    fit.max_kkt_violation = kkt;
    fit.converged = converged;
    fit.objective_path = std::move(objective);
    return fit;
  }

  const Eigen::VectorXd& residual() const { return resid_; }
  double kkt_tol() const { return kkt_tol_; }

 private:
  double update_coordinate(Eigen::Index j, double lambda) {
    const double d = col_ms_(j);
    if (d <= 0.0) return 0.0;
    const double g = X_.col(j).dot(resid_) / static_cast<double>(n_);
    const double bnew = soft_threshold(g + d * beta_(j), lambda) / d;
    const double change = bnew - beta_(j);
    if (change != 0.0) {
      resid_.noalias() -= X_.col(j) * change;
      beta_(j) = bnew;
    }
    return std::abs(change);
  }

  double sweep_all(double lambda) {
    double delta = 0.0;
    for (Eigen::Index j = 0; j < p_; ++j)
      delta = std::max(delta, update_coordinate(j, lambda));
    return delta;
  }

  double sweep_subset(double lambda, const std::vector<Eigen::Index>& subset) {
    double delta = 0.0;
    for (Eigen::Index j : subset)
      delta = std::max(delta, update_coordinate(j, lambda));
    return delta;
  }

  void collect_active(std::vector<Eigen::Index>& active) const {
    active.clear();
    for (Eigen::Index j = 0; j < p_; ++j)
      if (beta_(j) != 0.0) active.push_back(j);
  }

  double kkt_violation(double lambda) const {
    const Eigen::VectorXd grad = X_.transpose() * resid_ / static_cast<double>(n_);
    double viol = 0.0;
    for (Eigen::Index j = 0; j < p_; ++j) {
      if (beta_(j) != 0.0)
        viol = std::max(viol, std::abs(grad(j) - lambda * (beta_(j) > 0 ? 1.0 : -1.0)));
      else
        viol = std::max(viol, std::abs(grad(j)) - lambda);
    }
    return std::max(viol, 0.0);
  }

  double objective_value(double lambda) const {
    return 0.5 * resid_.squaredNorm() / static_cast<double>(n_) +
           lambda * beta_.lpNorm<1>();
  }

  const Eigen::MatrixXd& X_;
  const Eigen::VectorXd& y_;
  LassoOptions opts_;
  Eigen::Index n_, p_;
  Eigen::VectorXd col_ms_;
  Eigen::VectorXd beta_;
  Eigen::VectorXd resid_;
  double tol_ = 0.0;
  double kkt_tol_ = 0.0;
};

Eigen::MatrixXd drop_column(const Eigen::MatrixXd& X, Eigen::Index k) {
  Eigen::MatrixXd out(X.rows(), X.cols() - 1);
  if (k > 0) out.leftCols(k) = X.leftCols(k);
  if (k + 1 < X.cols())
    out.rightCols(X.cols() - k - 1) = X.rightCols(X.cols() - k - 1);
  return out;
}

}  // namespace

LassoFit lasso_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                   const LassoOptions& opts, const Eigen::VectorXd* warm_start) {
  CoordinateDescent cd(X, y, opts);
  if (warm_start != nullptr) cd.warm_start(*warm_start);
  return cd.run(lambda);
}

std::vector<LassoFit> lasso_path(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                 const std::vector<double>& lambdas,
                                 const LassoOptions& opts) {
  for (std::size_t i = 1; i < lambdas.size(); ++i)
    if (lambdas[i] > lambdas[i - 1])
      throw std::invalid_argument("lasso_path: lambdas must be non-increasing");
  CoordinateDescent cd(X, y, opts);
  std::vector<LassoFit> fits;
  fits.reserve(lambdas.size());
  for (double lambda : lambdas) fits.push_back(cd.run(lambda));
  return fits;
}

double lasso_lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  return (X.transpose() * y).lpNorm<Eigen::Infinity>() /
         static_cast<double>(X.rows());
}

std::vector<double> lambda_grid(double lambda_max, int size, double factor) {
  if (size < 1) throw std::invalid_argument("lambda grid needs >= 1 point");
  if (!(lambda_max > 0.0))
    throw std::invalid_argument("lambda grid needs lambda_max > 0");
  std::vector<double> grid(size);
  if (size == 1) {
    grid[0] = lambda_max;
    return grid;
  }
  const double step = std::log(factor) / static_cast<double>(size - 1);
  for (int i = 0; i < size; ++i)
    grid[i] = lambda_max * std::exp(step * static_cast<double>(i));
  return grid;
}

CvResult lasso_cv(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int n_folds,
                  int grid_size, Stream& rng, const LassoOptions& opts) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (n_folds < 2) throw std::invalid_argument("lasso_cv: need at least 2 folds");
  if (n < n_folds)
    throw std::invalid_argument("lasso_cv: fewer rows than folds");
  if (opts.check_inputs) require_finite(X, y);

  const double lam_max = std::max(lasso_lambda_max(X, y), 1e-12);
  CvResult out;
  out.lambda_grid = lambda_grid(lam_max, grid_size);
  out.cv_errors.assign(out.lambda_grid.size(), 0.0);

  // Random partition: shuffle rows, assign round-robin.
  std::vector<Eigen::Index> perm(n);
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  for (Eigen::Index i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  std::vector<int> fold_of(n);
  for (Eigen::Index i = 0; i < n; ++i)
    fold_of[perm[i]] = static_cast<int>(i % n_folds);

  LassoOptions fold_opts = opts;
  fold_opts.check_inputs = false;
  fold_opts.record_objective = false;

  for (int f = 0; f < n_folds; ++f) {
    std::vector<Eigen::Index> train, test;
    train.reserve(n);
    for (Eigen::Index i = 0; i < n; ++i)
      (fold_of[i] == f ? test : train).push_back(i);

    Eigen::MatrixXd Xtr(train.size(), p), Xte(test.size(), p);
    Eigen::VectorXd ytr(train.size()), yte(test.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
      Xtr.row(i) = X.row(train[i]);
      ytr(i) = y(train[i]);
    }
    for (std::size_t i = 0; i < test.size(); ++i) {
      Xte.row(i) = X.row(test[i]);
      yte(i) = y(test[i]);
    }

    CoordinateDescent cd(Xtr, ytr, fold_opts);
    for (std::size_t gi = 0; gi < out.lambda_grid.size(); ++gi) {
      const LassoFit fit = cd.run(out.lambda_grid[gi]);
      out.cv_errors[gi] += (yte - Xte * fit.coefficients).squaredNorm();
    }
  }
  for (double& e : out.cv_errors) e /= static_cast<double>(n);

  std::size_t star = 0;
  for (std::size_t gi = 1; gi < out.cv_errors.size(); ++gi)
    if (out.cv_errors[gi] < out.cv_errors[star]) star = gi;
  out.lambda_star = out.lambda_grid[star];

  // Refit on all rows, warm-starting down the grid to lambda_star.
  LassoOptions full_opts = opts;
  full_opts.check_inputs = false;
  CoordinateDescent cd(X, y, full_opts);
  for (std::size_t gi = 0; gi <= star; ++gi)
    out.fit_at_star = cd.run(out.lambda_grid[gi]);
  return out;
}

Eigen::VectorXd nodewise_lasso(const Eigen::MatrixXd& X, Eigen::Index k,
                               double lambda_k, const LassoOptions& opts) {
  if (X.cols() < 2)
    throw std::invalid_argument("nodewise_lasso: need at least 2 columns");
  if (k < 0 || k >= X.cols())
    throw std::invalid_argument("nodewise_lasso: coordinate out of range");
  const Eigen::MatrixXd Xm = drop_column(X, k);
  return lasso_fit(Xm, X.col(k), lambda_k, opts).coefficients;
}

NodewiseLambda tune_nodewise_lambda(const Eigen::MatrixXd& X, Eigen::Index k,
                                    const LassoOptions& opts) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (p < 3) throw std::invalid_argument("tune_nodewise_lambda: need p >= 3");
  if (n < 10) throw std::invalid_argument("tune_nodewise_lambda: need n >= 10");
  if (k < 0 || k >= p)
    throw std::invalid_argument("tune_nodewise_lambda: coordinate out of range");
  if (opts.check_inputs) require_finite(X, X.col(k));

  const Eigen::MatrixXd Xm = drop_column(X, k);
  const Eigen::VectorXd xk = X.col(k);
  const double lam_max = lasso_lambda_max(Xm, xk);
  if (!(lam_max > 0.0))
    throw std::runtime_error("tune_nodewise_lambda: degenerate target column");

  const std::vector<double> grid = lambda_grid(lam_max, 100);
  const double threshold = std::sqrt(std::log(static_cast<double>(p)));

  LassoOptions run_opts = opts;
  run_opts.check_inputs = false;
  run_opts.record_objective = false;
  CoordinateDescent cd(Xm, xk, run_opts);
  for (double lambda : grid) {
    cd.run(lambda);
    const Eigen::VectorXd& resid = cd.residual();
    const double rnorm = resid.norm();
    if (rnorm <= 0.0) continue;
    const double stat =
        (Xm.transpose() * resid).lpNorm<Eigen::Infinity>() / rnorm;
    if (stat < threshold) return NodewiseLambda{lambda, true};
  }
  return NodewiseLambda{grid.front(), false};
}

}  // namespace sindex
