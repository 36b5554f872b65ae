#include "gasloss/factorize.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "gasloss/error.hpp"
#include "gasloss/game.hpp"
#include "gasloss/lp.hpp"

namespace gasloss {
namespace {

constexpr double kRepresentationSlack = 1e-9;
constexpr double kRoundImprovement = 1e-9;

// Fixing R: min sum_l a_l  s.t.  sum_l a_l R_lj >= w'_ij for every j.
std::optional<Eigen::VectorXd> update_row(const Eigen::RowVectorXd& w_row,
                                          const Eigen::MatrixXd& R) {
  std::vector<Index> active;
  for (Index j = 0; j < w_row.size(); ++j) {
    if (w_row(j) > 0.0) active.push_back(j);
  }
  LinearProgram<double> lp;
  lp.direction = Direction::Minimize;
  lp.objective = Eigen::VectorXd::Ones(R.rows());
  lp.constraints.resize(static_cast<Index>(active.size()), R.rows());
  lp.bounds.resize(static_cast<Index>(active.size()));
  for (std::size_t c = 0; c < active.size(); ++c) {
    lp.constraints.row(static_cast<Index>(c)) = -R.col(active[c]).transpose();
    lp.bounds(static_cast<Index>(c)) = -w_row(active[c]);
  }
  const LpResult<double> res = solve_lp(lp);
  if (!res.optimal()) return std::nullopt;
  return res.primal;
}

// Fixing A: min sum_l r_l  s.t.  A r >= w'_j,  sum_l r_l <= 1.
std::optional<Eigen::VectorXd> update_column(const Eigen::VectorXd& w_col,
                                             const Eigen::MatrixXd& A) {
  std::vector<Index> active;
  for (Index i = 0; i < w_col.size(); ++i) {
    if (w_col(i) > 0.0) active.push_back(i);
  }
  const Index rows = static_cast<Index>(active.size()) + 1;
  LinearProgram<double> lp;
  lp.direction = Direction::Minimize;
  lp.objective = Eigen::VectorXd::Ones(A.cols());
  lp.constraints.resize(rows, A.cols());
  lp.bounds.resize(rows);
  for (std::size_t c = 0; c < active.size(); ++c) {
    lp.constraints.row(static_cast<Index>(c)) = -A.row(active[c]);
    lp.bounds(static_cast<Index>(c)) = -w_col(active[c]);
  }
  lp.constraints.row(rows - 1).setOnes();
  lp.bounds(rows - 1) = 1.0;
  const LpResult<double> res = solve_lp(lp);
  if (!res.optimal()) return std::nullopt;
  return res.primal;
}

}  // namespace

bool is_upper_bounding(const NormalizedInstance& instance, const Factorization& f,
                       double tolerance) {
  const Eigen::MatrixXd& w = instance.matrix();
  if (f.A.rows() != w.rows() || f.R.cols() != w.cols() || f.A.cols() != f.R.rows()) return false;
  if (f.A.size() > 0 && f.A.minCoeff() < 0.0) return false;
  if (f.R.size() > 0 && f.R.minCoeff() < 0.0) return false;
  if (f.R.colwise().sum().maxCoeff() > 1.0 + tolerance) return false;
  return ((f.A * f.R - w).array() >= -tolerance).all();
}

bool kdim_represents(const NormalizedInstance& instance, const Eigen::MatrixXd& A) {
  const Eigen::MatrixXd& w = instance.matrix();
  if (A.rows() != w.rows()) {
    throw Error(ErrorCode::LengthMismatch, "gas matrix must have one row per operation");
  }
  if (A.size() > 0 && A.minCoeff() < 0.0) return false;
  LinearProgram<double> lp;
  lp.direction = Direction::Maximize;
  lp.constraints = A.transpose();
  lp.bounds = Eigen::VectorXd::Ones(A.cols());
  for (Index j = 0; j < w.cols(); ++j) {
    lp.objective = w.col(j);
    const LpResult<double> res = solve_lp(lp);
    if (res.status == LpStatus::Unbounded) return false;
    if (!res.optimal()) {
      throw Error(ErrorCode::NumericalFailure, "representation LP did not reach an optimum");
    }
    if (res.objective_value > 1.0 + kRepresentationSlack) return false;
  }
  return true;
}

Factorization partition_to_factorization(const ResourceInstance& instance,
                                         const PartitionPlan& plan) {
  const Eigen::MatrixXd w = normalize(instance).matrix();
  const Index k = static_cast<Index>(plan.groups.size());
  Factorization f;
  f.A = Eigen::MatrixXd::Zero(w.rows(), k);
  f.R = Eigen::MatrixXd::Zero(k, w.cols());
  for (Index l = 0; l < k; ++l) {
    for (Index j : plan.groups[static_cast<std::size_t>(l)]) {
      f.A.col(l) = f.A.col(l).cwiseMax(w.col(j));
      f.R(l, j) = 1.0;
    }
  }
  return f;
}

FactorReport factor_loss(const NormalizedInstance& instance, const Eigen::MatrixXd& A) {
  if (!kdim_represents(instance, A)) {
    throw Error(ErrorCode::RepresentationViolated,
                "gas matrix does not represent the normalized instance");
  }
  const Eigen::MatrixXd& w = instance.matrix();
  const Index k = A.cols();
  FactorReport report;
  report.factorization.A = A;
  report.represents = true;
  report.dimension_values = Eigen::VectorXd::Constant(k, std::numeric_limits<double>::quiet_NaN());
  report.dimension_oracle = Eigen::VectorXd::Constant(k, std::numeric_limits<double>::quiet_NaN());

  double min_value = std::numeric_limits<double>::infinity();
  for (Index l = 0; l < k; ++l) {
    std::vector<Index> ops;
    for (Index i = 0; i < w.rows(); ++i) {
      if (A(i, l) > 0.0) ops.push_back(i);
    }
    if (ops.empty()) {
      report.empty_dimensions.push_back(l);
      continue;
    }
    Eigen::MatrixXd u(static_cast<Index>(ops.size()), w.cols());
    for (std::size_t r = 0; r < ops.size(); ++r) {
      u.row(static_cast<Index>(r)) = w.row(ops[r]) / A(ops[r], l);
    }
    const double value = solve_zero_sum(u, /*row_minimizes=*/true).value;
    report.dimension_values(l) = value;
    min_value = std::min(min_value, value);

    LinearProgram<double> lp;
    lp.direction = Direction::Maximize;
    lp.objective = A.col(l);
    lp.constraints = w.transpose();
    lp.bounds = Eigen::VectorXd::Ones(w.cols());
    const LpResult<double> res = solve_lp(lp);
    if (!res.optimal()) {
      throw Error(ErrorCode::NumericalFailure, "dimension oracle LP did not reach an optimum");
    }
    report.dimension_oracle(l) = res.objective_value;
  }
  if (!(min_value > 0.0) || !std::isfinite(min_value)) {
    throw Error(ErrorCode::NumericalFailure, "no dimension with a positive game value");
  }
  report.alpha = 1.0 / min_value;
  return report;
}

FactorReport factor_loss(const NormalizedInstance& instance, const Factorization& f) {
  FactorReport report = factor_loss(instance, f.A);
  report.factorization = f;
  return report;
}

FactorReport alternating_factorization(const NormalizedInstance& instance, Index k,
                                       int max_rounds) {
  if (k < 1) throw Error(ErrorCode::InvalidPartition, "number of dimensions must be positive");
  const ResourceInstance unit = instance.as_instance();
  const PartitionPlan plan = unit.resource_count() <= kExactEnumerationLimit
                                 ? optimal_partition_exact(unit, k)
                                 : optimal_partition_greedy(unit, k);
  Factorization current = partition_to_factorization(unit, plan);
  FactorReport best = factor_loss(instance, current);

  const Eigen::MatrixXd& w = instance.matrix();
  double previous = best.alpha;
  int rounds = 0;
  while (rounds < max_rounds) {
    ++rounds;
    for (Index i = 0; i < w.rows(); ++i) {
      if (auto row = update_row(w.row(i), current.R)) current.A.row(i) = row->transpose();
    }
    for (Index j = 0; j < w.cols(); ++j) {
      if (auto col = update_column(w.col(j), current.A)) current.R.col(j) = *col;
    }

    double alpha = std::numeric_limits<double>::infinity();
    try {
      FactorReport candidate = factor_loss(instance, current);
      alpha = candidate.alpha;
      if (alpha < best.alpha) best = std::move(candidate);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RepresentationViolated) throw;
    }
    if (!(previous - alpha >= kRoundImprovement)) break;
    previous = alpha;
  }
  best.rounds = rounds;
  return best;
}

}  // namespace gasloss
