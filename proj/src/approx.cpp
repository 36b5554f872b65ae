#include "gasloss/approx.hpp"

#include "gasloss/error.hpp"
#include "gasloss/lp.hpp"

namespace gasloss {

UtilityMatrix build_game(const ResourceInstance& instance) {
  const Eigen::MatrixXd w = normalize(instance).matrix();
  const Eigen::VectorXd g = w.rowwise().maxCoeff();
  UtilityMatrix u;
  u.entries = w.array().colwise() / g.array();
  u.operation_names = instance.operation_names();
  u.resource_names = instance.resource_names();
  return u;
}

ApproxReport approximability(const ResourceInstance& instance, bool with_oracle) {
  ApproxReport report;
  report.measure = minimal_gas_measure(instance);
  report.game = solve_zero_sum(build_game(instance).entries, /*row_minimizes=*/true);
  if (!(report.game.value > 0.0)) {
    throw Error(ErrorCode::NumericalFailure, "utility game has non-positive value");
  }
  report.alpha = 1.0 / report.game.value;
  report.witness.counts =
      report.alpha * report.game.row_strategy.cwiseQuotient(report.measure.costs);
  if (with_oracle) report.oracle_alpha = approximability_oracle(instance);
  return report;
}

double approximability_oracle(const ResourceInstance& instance) {
  LinearProgram<double> lp;
  lp.direction = Direction::Maximize;
  lp.objective = minimal_gas_measure(instance).costs;
  lp.constraints = instance.usage().transpose();
  lp.bounds = instance.capacity();
  const LpResult<double> res = solve_lp(lp);
  if (!res.optimal()) {
    throw Error(ErrorCode::NumericalFailure, "approximability LP did not reach an optimum");
  }
  return res.objective_value;
}

}  // namespace gasloss
