#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "gasloss/game.hpp"
#include "gasloss/model.hpp"

namespace gasloss {

/// u_ij = w_ij / (B_j g_i) with g the minimal measure. Rows are operations
/// (the minimizing player), columns are resources (the maximizer). Every
/// entry lies in [0, 1] and every row attains 1.
struct UtilityMatrix {
  Eigen::MatrixXd entries;
  std::vector<std::string> operation_names;
  std::vector<std::string> resource_names;
};

struct ApproxReport {
  /// Smallest alpha such that every feasible block has gas at most alpha.
  double alpha = 1.0;
  GasMeasure measure;
  GameSolution<double> game;
  /// Feasible block with gas exactly alpha: x_i = alpha * x*_i / g_i.
  BlockVector witness;
  std::optional<double> oracle_alpha;
};

UtilityMatrix build_game(const ResourceInstance& instance);

/// alpha = 1 / value of the utility game. With `with_oracle` also runs
/// approximability_oracle and stores its result.
ApproxReport approximability(const ResourceInstance& instance, bool with_oracle = false);

/// max g.x subject to W x <= B, x >= 0, solved directly as an LP.
double approximability_oracle(const ResourceInstance& instance);

}  // namespace gasloss
