#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace sindex {

/// Leave-k-out block plan. Block j covers rows [j*k, (j+1)*k); any remainder
/// rows past the last full block are never left out.
struct JackknifePlan {
  Eigen::Index n = 0;
  int block_size = 10;
  int n_blocks = 0;

  static JackknifePlan make(Eigen::Index n, int block_size = 10);

  /// All row indices except those in the given block, in ascending order.
  std::vector<Eigen::Index> retained_rows(int block) const;
};

/// Estimator applied to the rows retained after deleting one block.
using JackknifeEstimator =
    std::function<double(int block, const std::vector<Eigen::Index>& retained)>;

/// (1/B) sum_j (est_j - mean est)^2 over the leave-one-block-out estimates.
/// Estimator failures propagate annotated with the block index.
double jackknife_variance(const JackknifePlan& plan, const JackknifeEstimator& estimator);

/// Estimator additionally parametrized by the candidate expansion order.
/// Calls are grouped by block so implementations can reuse per-block work.
using DegreeEstimator = std::function<double(
    int block, const std::vector<Eigen::Index>& retained, int degree)>;

/// Candidate order minimizing the jackknife variance; ties break toward the
/// smaller order.
int select_degree(const std::vector<int>& degrees, const JackknifePlan& plan,
                  const DegreeEstimator& estimator);

}  // namespace sindex
