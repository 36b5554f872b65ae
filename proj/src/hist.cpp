#include "gasloss/hist.hpp"

#include <cmath>
#include <optional>

#include "gasloss/approx.hpp"
#include "gasloss/error.hpp"
#include "gasloss/lp.hpp"

namespace gasloss {
namespace {

constexpr double kSimplexTolerance = 1e-9;

// z_i = f_i g_i.  feasible(v)  <=>  exists z in the scaled box with
// sum_i z_i (u_ij - v) <= 0 for all j and sum_i z_i / g_i = 1.
std::optional<Eigen::VectorXd> mix_with_value_at_most(const Eigen::MatrixXd& u,
                                                      const Eigen::VectorXd& g,
                                                      const Eigen::VectorXd& low,
                                                      const Eigen::VectorXd& high, double v) {
  const Index m = u.rows();
  const Index n = u.cols();
  const Index rows = n + 2 * m + 1;
  LinearProgram<double> lp;
  lp.direction = Direction::Maximize;
  lp.objective = Eigen::VectorXd::Zero(m);
  lp.constraints = Eigen::MatrixXd::Zero(rows, m);
  lp.bounds = Eigen::VectorXd::Zero(rows);
  lp.senses.assign(static_cast<std::size_t>(rows), Sense::LessEqual);
  lp.constraints.topRows(n) = (u.array() - v).matrix().transpose();
  for (Index i = 0; i < m; ++i) {
    lp.constraints(n + i, i) = 1.0;
    lp.bounds(n + i) = high(i) * g(i);
    lp.constraints(n + m + i, i) = -1.0;
    lp.bounds(n + m + i) = -low(i) * g(i);
  }
  lp.constraints.row(rows - 1) = g.cwiseInverse().transpose();
  lp.bounds(rows - 1) = 1.0;
  lp.senses.back() = Sense::Equal;

  const LpResult<double> res = solve_lp(lp);
  if (!res.optimal()) return std::nullopt;
  Eigen::VectorXd f = res.primal.cwiseQuotient(g);
  return f;
}

}  // namespace

FrequencyProfile::FrequencyProfile(Eigen::VectorXd f) : f_(std::move(f)) {
  if (f_.size() == 0 || !f_.allFinite() || f_.minCoeff() < 0.0 ||
      std::abs(f_.sum() - 1.0) > kSimplexTolerance) {
    throw Error(ErrorCode::DegenerateProfile, "frequency profile must be a probability vector");
  }
}

FrequencyProfile FrequencyProfile::from_weights(const Eigen::VectorXd& weights) {
  if (weights.size() == 0 || !weights.allFinite() || weights.minCoeff() < 0.0 ||
      !(weights.sum() > 0.0)) {
    throw Error(ErrorCode::DegenerateProfile,
                "frequency weights must be nonnegative with a positive total");
  }
  return FrequencyProfile(weights / weights.sum());
}

Eigen::VectorXd hist_strategy(const GasMeasure& g, const FrequencyProfile& f) {
  if (g.size() != f.size()) {
    throw Error(ErrorCode::LengthMismatch, "profile length does not match operation count");
  }
  const Eigen::VectorXd weighted = f.values().cwiseProduct(g.costs);
  const double total = weighted.sum();
  if (!(total > 0.0)) {
    throw Error(ErrorCode::DegenerateProfile, "profile puts all mass on zero-cost operations");
  }
  return weighted / total;
}

HistReport hist_loss(const ResourceInstance& instance, const FrequencyProfile& f) {
  const GasMeasure g = minimal_gas_measure(instance);
  HistReport report;
  report.frequencies = f.values();
  report.strategy = hist_strategy(g, f);
  report.column_payoffs = build_game(instance).entries.transpose() * report.strategy;
  report.nu = report.column_payoffs.maxCoeff(&report.best_reply);
  report.alpha = 1.0 / report.nu;
  return report;
}

HistReport hist_loss_range(const ResourceInstance& instance, const Eigen::VectorXd& low,
                           const Eigen::VectorXd& high) {
  const Index m = instance.operation_count();
  if (low.size() != m || high.size() != m) {
    throw Error(ErrorCode::LengthMismatch, "frequency bounds must have one entry per operation");
  }
  if (!low.allFinite() || !high.allFinite() || low.minCoeff() < 0.0 ||
      (high - low).minCoeff() < 0.0 || low.sum() > 1.0 + kSimplexTolerance ||
      high.sum() < 1.0 - kSimplexTolerance) {
    throw Error(ErrorCode::EmptyBox, "frequency bounds contain no probability vector");
  }

  const Eigen::MatrixXd u = build_game(instance).entries;
  const Eigen::VectorXd g = minimal_gas_measure(instance).costs;

  // Every utility is at most 1, so any mix reaches value 1; none reaches 0
  // because each row attains 1 somewhere.
  std::optional<Eigen::VectorXd> witness = mix_with_value_at_most(u, g, low, high, 1.0);
  if (!witness) throw Error(ErrorCode::EmptyBox, "frequency bounds contain no probability vector");
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > kRangeBisectionTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (auto f = mix_with_value_at_most(u, g, low, high, mid)) {
      hi = mid;
      witness = std::move(f);
    } else {
      lo = mid;
    }
  }

  Eigen::VectorXd f = witness->cwiseMax(0.0);
  return hist_loss(instance, FrequencyProfile(f / f.sum()));
}

}  // namespace gasloss
