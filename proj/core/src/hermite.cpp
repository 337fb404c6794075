#include "sindex/hermite.hpp"

#include <cmath>
#include <stdexcept>

namespace sindex {

namespace {
constexpr int kMaxDegree = 64;
}

double hermite_eval(int degree, double xi) {
  if (degree < 0) throw std::invalid_argument("hermite degree must be >= 0");
  if (degree > kMaxDegree)
    throw std::invalid_argument("hermite degree beyond the stability guard (64)");
  double prev = 1.0;  // h_0
  if (degree == 0) return prev;
  double cur = xi;  // h_1
  for (int j = 1; j < degree; ++j) {
    const double next =
        (xi * cur - std::sqrt(static_cast<double>(j)) * prev) /
        std::sqrt(static_cast<double>(j + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

Eigen::VectorXd hermite_eval_all(int max_degree, double xi) {
  if (max_degree < 0) throw std::invalid_argument("hermite degree must be >= 0");
  if (max_degree > kMaxDegree)
    throw std::invalid_argument("hermite degree beyond the stability guard (64)");
  Eigen::VectorXd h(max_degree + 1);
  h(0) = 1.0;
  if (max_degree >= 1) h(1) = xi;
  for (int j = 1; j < max_degree; ++j)
    h(j + 1) = (xi * h(j) - std::sqrt(static_cast<double>(j)) * h(j - 1)) /
               std::sqrt(static_cast<double>(j + 1));
  return h;
}

int default_degree(Eigen::Index n) {
  if (n < 2) throw std::invalid_argument("default_degree needs n >= 2");
  const int m = static_cast<int>(
      std::floor(std::pow(std::log(static_cast<double>(n)), 2.0 / 3.0)));
  return std::max(m, 1);
}

namespace {

QuadratureRule golub_welsch(const Eigen::VectorXd& offdiag, double total_mass) {
  const Eigen::Index n = offdiag.size() + 1;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(Eigen::VectorXd::Zero(n), offdiag,
                                Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("quadrature eigen-solver failed");
  QuadratureRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = total_mass * solver.eigenvectors().row(0).transpose().cwiseAbs2();
  return rule;
}

}  // namespace

QuadratureRule gauss_hermite_rule(int n_nodes) {
  if (n_nodes < 2 || n_nodes > 128)
    throw std::invalid_argument("gauss_hermite_rule supports 2..128 nodes");
  Eigen::VectorXd offdiag(n_nodes - 1);
  for (int j = 1; j < n_nodes; ++j)
    offdiag(j - 1) = std::sqrt(static_cast<double>(j));
  return golub_welsch(offdiag, 1.0);
}

QuadratureRule gauss_legendre_rule(int n_nodes, double a, double b) {
  if (n_nodes < 2 || n_nodes > 512)
    throw std::invalid_argument("gauss_legendre_rule supports 2..512 nodes");
  Eigen::VectorXd offdiag(n_nodes - 1);
  for (int j = 1; j < n_nodes; ++j) {
    const double jj = static_cast<double>(j);
    offdiag(j - 1) = jj / std::sqrt(4.0 * jj * jj - 1.0);
  }
  QuadratureRule rule = golub_welsch(offdiag, 2.0);
  // map [-1, 1] -> [a, b]
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  rule.nodes = (rule.nodes.array() * half + mid).matrix();
  rule.weights *= half;
  return rule;
}

HermiteCoeffs HermiteCoeffs::truncated(int m) const {
  if (m < 1 || m > degree)
    throw std::invalid_argument("truncation order out of range");
  HermiteCoeffs out;
  out.mu = mu.head(m + 1);
  out.degree = m;
  out.tau_hat = tau_hat;
  out.mu1_source = mu1_source;
  return out;
}

HermiteCoeffs estimate_coeffs(const Eigen::MatrixXd& X22, const Eigen::VectorXd& y22,
                              const Eigen::VectorXd& tau_hat, double mu1, int degree,
                              Mu1Source source) {
  if (degree < 1) throw std::invalid_argument("estimate_coeffs needs degree >= 1");
  if (degree > kMaxDegree)
    throw std::invalid_argument("hermite degree beyond the stability guard (64)");
  if (X22.cols() != tau_hat.size())
    throw std::invalid_argument("tau_hat dimension does not match design");
  if (X22.rows() != y22.size())
    throw std::invalid_argument("estimate_coeffs: X and y row mismatch");
  const Eigen::Index n = X22.rows();
  if (n < 1) throw std::invalid_argument("estimate_coeffs: empty sample");

  const Eigen::VectorXd xi = X22 * tau_hat;
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(degree + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd h = hermite_eval_all(degree, xi(i));
    mu.noalias() += y22(i) * h;
  }
  mu /= static_cast<double>(n);
  mu(1) = mu1;

  HermiteCoeffs out;
  out.mu = std::move(mu);
  out.degree = degree;
  out.tau_hat = tau_hat;
  out.mu1_source = source;
  return out;
}

double link_estimate(const HermiteCoeffs& coeffs, double xi) {
  const Eigen::VectorXd h = hermite_eval_all(coeffs.degree, xi);
  return coeffs.mu.dot(h);
}

}  // namespace sindex
