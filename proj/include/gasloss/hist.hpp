#pragma once

#include <Eigen/Dense>

#include "gasloss/model.hpp"

namespace gasloss {

/// Operation mix: probability vector over the instance's operations.
class FrequencyProfile {
 public:
  /// Throws DegenerateProfile unless `f` is a probability vector (1e-9).
  explicit FrequencyProfile(Eigen::VectorXd f);
  /// Rescales nonnegative weights to sum to one.
  static FrequencyProfile from_weights(const Eigen::VectorXd& weights);

  const Eigen::VectorXd& values() const { return f_; }
  Index size() const { return f_.size(); }

 private:
  Eigen::VectorXd f_;
};

struct HistReport {
  /// The operation mix evaluated (for range queries, the worst one found).
  Eigen::VectorXd frequencies;
  /// Row strategy of the utility game induced by the mix.
  Eigen::VectorXd strategy;
  /// Expected utility of each resource (column) against `strategy`.
  Eigen::VectorXd column_payoffs;
  double nu = 1.0;
  double alpha = 1.0;
  Index best_reply = 0;
};

/// x_i = f_i g_i / sum_k f_k g_k. Throws DegenerateProfile if the sum is 0.
Eigen::VectorXd hist_strategy(const GasMeasure& g, const FrequencyProfile& f);

/// Loss of the minimal measure when operations occur with frequencies f:
/// the column player's best reply to the induced strategy.
HistReport hist_loss(const ResourceInstance& instance, const FrequencyProfile& f);

/// Worst loss over every mix f with low <= f <= high, found by bisection on
/// the best-reply value with one feasibility LP per step. Throws EmptyBox if
/// the box holds no probability vector.
HistReport hist_loss_range(const ResourceInstance& instance, const Eigen::VectorXd& low,
                           const Eigen::VectorXd& high);

/// Bisection stops once the bracket on the value is this narrow.
inline constexpr double kRangeBisectionTolerance = 1e-9;

}  // namespace gasloss
