#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "gasloss/model.hpp"
#include "gasloss/partition.hpp"

namespace gasloss {

/// Nonnegative factors with W' <= A R elementwise and every column of R
/// summing to at most 1. A (operations x k) is the k-dimensional gas measure.
struct Factorization {
  Eigen::MatrixXd A;
  Eigen::MatrixXd R;
  Index dimensions() const { return A.cols(); }
};

struct FactorReport {
  Factorization factorization;
  /// Game value per dimension; NaN for skipped (all-zero) dimensions.
  Eigen::VectorXd dimension_values;
  /// max { sum_i x_i A_il : W'x <= 1 } per dimension, solved directly.
  Eigen::VectorXd dimension_oracle;
  std::vector<Index> empty_dimensions;
  /// 1 / min_l value_l, equivalently max_l of the per-dimension losses.
  double alpha = 1.0;
  bool represents = false;
  /// Alternating rounds performed (0 when the report comes from factor_loss).
  int rounds = 0;
};

/// Upper-bounding conditions on (A, R) within `tolerance`.
bool is_upper_bounding(const NormalizedInstance& instance, const Factorization& f,
                       double tolerance = 1e-9);

/// For every resource j: max { sum_i x_i w'_ij : A'x <= 1, x >= 0 } <= 1 + 1e-9.
/// An unbounded direction means A does not represent W'.
bool kdim_represents(const NormalizedInstance& instance, const Eigen::MatrixXd& A);

/// A_il = max_{j in group l} w'_ij,  R_lj = [j in group l].
Factorization partition_to_factorization(const ResourceInstance& instance,
                                         const PartitionPlan& plan);

/// Per-dimension games U^l_ij = w'_ij / A_il over operations with A_il > 0.
/// Throws RepresentationViolated if A does not represent W'.
FactorReport factor_loss(const NormalizedInstance& instance, const Eigen::MatrixXd& A);
FactorReport factor_loss(const NormalizedInstance& instance, const Factorization& f);

/// Starts from the best available k-group partition and alternates LP updates
/// of A (rows) and R (columns), keeping the iterate with the smallest alpha.
FactorReport alternating_factorization(const NormalizedInstance& instance, Index k,
                                       int max_rounds);

}  // namespace gasloss
