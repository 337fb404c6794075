#include "sindex/jackknife.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sindex {

JackknifePlan JackknifePlan::make(Eigen::Index n, int block_size) {
  if (block_size < 1) throw std::invalid_argument("jackknife block size must be >= 1");
  JackknifePlan plan;
  plan.n = n;
  plan.block_size = block_size;
  plan.n_blocks = static_cast<int>(n / block_size);
  if (plan.n_blocks < 2)
    throw std::invalid_argument("jackknife needs at least 2 blocks");
  return plan;
}

std::vector<Eigen::Index> JackknifePlan::retained_rows(int block) const {
  if (block < 0 || block >= n_blocks)
    throw std::invalid_argument("jackknife block index out of range");
  const Eigen::Index lo = static_cast<Eigen::Index>(block) * block_size;
  const Eigen::Index hi = lo + block_size;
  std::vector<Eigen::Index> rows;
  rows.reserve(n - block_size);
  for (Eigen::Index i = 0; i < n; ++i)
    if (i < lo || i >= hi) rows.push_back(i);
  return rows;
}

namespace {

double variance_of(const std::vector<double>& values) {
  const double b = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= b;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return var / b;
}

[[noreturn]] void rethrow_with_block(int block) {
  try {
    throw;
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg << "jackknife block " << block << ": " << e.what();
    throw std::runtime_error(msg.str());
  }
}

}  // namespace

double jackknife_variance(const JackknifePlan& plan,
                          const JackknifeEstimator& estimator) {
  std::vector<double> estimates(plan.n_blocks);
  for (int b = 0; b < plan.n_blocks; ++b) {
    const auto retained = plan.retained_rows(b);
    try {
      estimates[b] = estimator(b, retained);
    } catch (...) {
      rethrow_with_block(b);
    }
  }
  return variance_of(estimates);
}

int select_degree(const std::vector<int>& degrees, const JackknifePlan& plan,
                  const DegreeEstimator& estimator) {
  if (degrees.empty())
    throw std::invalid_argument("select_degree: empty candidate list");
  std::vector<std::vector<double>> estimates(
      degrees.size(), std::vector<double>(plan.n_blocks));
  for (int b = 0; b < plan.n_blocks; ++b) {
    const auto retained = plan.retained_rows(b);
    for (std::size_t d = 0; d < degrees.size(); ++d) {
      try {
        estimates[d][b] = estimator(b, retained, degrees[d]);
      } catch (...) {
        rethrow_with_block(b);
      }
    }
  }
  int best = degrees.front();
  double best_var = std::numeric_limits<double>::infinity();
  for (std::size_t d = 0; d < degrees.size(); ++d) {
    const double var = variance_of(estimates[d]);
    if (var < best_var || (var == best_var && degrees[d] < best)) {
      best_var = var;
      best = degrees[d];
    }
  }
  return best;
}

}  // namespace sindex
