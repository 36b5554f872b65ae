#pragma once

// Dense two-phase simplex over Eigen matrices.
//
// Problems handled here are tiny (at most a few hundred variables), so the
// solver keeps a full tableau and refines the final basis with an LU solve
// against the original constraint matrix.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gasloss/error.hpp"

namespace gasloss {

/// Solver tolerances. Every module that compares LP output uses these.
namespace tol {
inline constexpr double kPivot = 1e-10;
inline constexpr double kFeasibility = 1e-9;
inline constexpr double kOptimality = 1e-9;
/// Consecutive degenerate pivots tolerated before switching to Bland's rule.
inline constexpr int kDegenerateBudget = 50;
}  // namespace tol

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

enum class Direction { Maximize, Minimize };
enum class Sense { LessEqual, Equal };
enum class LpStatus { Optimal, Infeasible, Unbounded };

/// optimize objective . x  subject to  constraints * x (<= | =) bounds,  x >= 0.
template <typename Scalar = double>
struct LinearProgram {
  Direction direction = Direction::Maximize;
  VectorX<Scalar> objective;
  MatrixX<Scalar> constraints;
  VectorX<Scalar> bounds;
  /// One entry per constraint row; empty means every row is LessEqual.
  std::vector<Sense> senses;

  Sense sense(Eigen::Index row) const {
    return senses.empty() ? Sense::LessEqual : senses[static_cast<std::size_t>(row)];
  }

  void check_shape() const {
    if (constraints.rows() != bounds.size() || constraints.cols() != objective.size() ||
        (!senses.empty() && static_cast<Eigen::Index>(senses.size()) != bounds.size())) {
      throw Error(ErrorCode::LengthMismatch, "linear program: inconsistent dimensions");
    }
    if (!constraints.allFinite() || !bounds.allFinite() || !objective.allFinite()) {
      throw Error(ErrorCode::NumericalFailure, "linear program: non-finite coefficients");
    }
  }
};

template <typename Scalar = double>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Scalar objective_value = 0;
  VectorX<Scalar> primal;
  /// Shadow prices d(objective)/d(bounds); at the optimum bounds.dot(dual) equals
  /// objective_value. Nonnegative on LessEqual rows of a maximization.
  VectorX<Scalar> dual;
  int iterations = 0;

  bool optimal() const { return status == LpStatus::Optimal; }
};

namespace detail {

template <typename Scalar>
class DenseSimplex {
 public:
  explicit DenseSimplex(const LinearProgram<Scalar>& lp) : lp_(lp) {
    lp_.check_shape();
    m_ = lp.constraints.rows();
    n_ = lp.constraints.cols();
    build();
  }

  LpResult<Scalar> run() {
    LpResult<Scalar> result;

    const bool needs_phase_one = std::any_of(kind_.begin(), kind_.end(), [](ColumnKind k) {
      return k == ColumnKind::Artificial;
    });
    if (needs_phase_one) {
      VectorX<Scalar> cost = VectorX<Scalar>::Zero(cols_);
      for (Eigen::Index j = 0; j < cols_; ++j) {
        if (kind_[j] == ColumnKind::Artificial) cost(j) = Scalar(-1);
      }
      load_objective(cost);
      iterate(/*allow_artificial=*/true);  // phase one is bounded above by 0
      const Scalar scale = std::max<Scalar>(Scalar(1), rhs_scale_);
      if (tab_(m_, cols_) < -Scalar(tol::kFeasibility) * scale) {
        result.status = LpStatus::Infeasible;
        result.iterations = iterations_;
        return result;
      }
      drive_out_artificials();
    }

    VectorX<Scalar> cost = VectorX<Scalar>::Zero(cols_);
    const Scalar flip = lp_.direction == Direction::Maximize ? Scalar(1) : Scalar(-1);
    cost.head(n_) = flip * lp_.objective;
    load_objective(cost);
    if (!iterate(/*allow_artificial=*/false)) {
      result.status = LpStatus::Unbounded;
      result.iterations = iterations_;
      return result;
    }

    VectorX<Scalar> xb(m_);
    for (Eigen::Index r = 0; r < m_; ++r) xb(r) = tab_(r, cols_);
    VectorX<Scalar> y(m_);
    for (Eigen::Index r = 0; r < m_; ++r) y(r) = tab_(m_, identity_col_[r]);
    refine(cost, xb, y);

    result.status = LpStatus::Optimal;
    result.primal = VectorX<Scalar>::Zero(n_);
    for (Eigen::Index r = 0; r < m_; ++r) {
      if (basis_[r] < n_) result.primal(basis_[r]) = std::max(Scalar(0), xb(r));
    }
    result.dual.resize(m_);
    for (Eigen::Index r = 0; r < m_; ++r) result.dual(r) = flip * row_sign_[r] * y(r);
    result.objective_value = lp_.objective.dot(result.primal);
    result.iterations = iterations_;
    return result;
  }

 private:
  enum class ColumnKind { Structural, Slack, Surplus, Artificial };

  void build() {
    // Row i is scaled by row_sign_[i] so that its right-hand side is >= 0.
    // Every row owns one identity column: a slack when the row stays <=, an
    // artificial otherwise. Flipped <= rows additionally get a surplus column.
    row_sign_.assign(m_, Scalar(1));
    Eigen::Index surplus = 0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (lp_.bounds(i) < Scalar(0)) row_sign_[i] = Scalar(-1);
      if (lp_.sense(i) == Sense::LessEqual && row_sign_[i] < Scalar(0)) ++surplus;
    }
    cols_ = n_ + m_ + surplus;
    kind_.assign(cols_, ColumnKind::Structural);
    identity_col_.resize(m_);
    basis_.resize(m_);
    augmented_ = MatrixX<Scalar>::Zero(m_, cols_);
    rhs_ = VectorX<Scalar>(m_);
    Eigen::Index next_surplus = n_ + m_;
    for (Eigen::Index i = 0; i < m_; ++i) {
      augmented_.row(i).head(n_) = row_sign_[i] * lp_.constraints.row(i);
      rhs_(i) = row_sign_[i] * lp_.bounds(i);
      const Eigen::Index id = n_ + i;
      identity_col_[i] = id;
      augmented_(i, id) = Scalar(1);
      const bool is_slack = lp_.sense(i) == Sense::LessEqual && row_sign_[i] > Scalar(0);
      kind_[id] = is_slack ? ColumnKind::Slack : ColumnKind::Artificial;
      if (lp_.sense(i) == Sense::LessEqual && row_sign_[i] < Scalar(0)) {
        augmented_(i, next_surplus) = Scalar(-1);
        kind_[next_surplus] = ColumnKind::Surplus;
        ++next_surplus;
      }
      basis_[i] = id;
    }
    rhs_scale_ = m_ > 0 ? rhs_.cwiseAbs().maxCoeff() : Scalar(0);

    tab_ = MatrixX<Scalar>::Zero(m_ + 1, cols_ + 1);
    tab_.topLeftCorner(m_, cols_) = augmented_;
    tab_.topRightCorner(m_, 1) = rhs_;
    max_iterations_ = 1000 + 100 * static_cast<int>(m_ + cols_);
  }

  void load_objective(const VectorX<Scalar>& cost) {
    cost_ = cost;
    tab_.row(m_).setZero();
    for (Eigen::Index j = 0; j <= cols_; ++j) {
      Scalar z = j < cols_ ? -cost(j) : Scalar(0);
      for (Eigen::Index r = 0; r < m_; ++r) z += cost(basis_[r]) * tab_(r, j);
      tab_(m_, j) = z;
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    const Scalar p = tab_(row, col);
    tab_.row(row) /= p;
    tab_(row, col) = Scalar(1);
    for (Eigen::Index r = 0; r <= m_; ++r) {
      if (r == row) continue;
      const Scalar f = tab_(r, col);
      if (f == Scalar(0)) continue;
      tab_.row(r) -= f * tab_.row(row);
      tab_(r, col) = Scalar(0);
    }
    for (Eigen::Index r = 0; r < m_; ++r) {
      Scalar& b = tab_(r, cols_);
      if (b < Scalar(0) && b > -Scalar(tol::kFeasibility)) b = Scalar(0);
    }
    basis_[row] = col;
  }

  // Returns false when the objective is unbounded.
  bool iterate(bool allow_artificial) {
    bool bland = false;
    int degenerate_run = 0;
    for (;;) {
      Eigen::Index enter = -1;
      Scalar best = -Scalar(tol::kOptimality);
      for (Eigen::Index j = 0; j < cols_; ++j) {
        if (!allow_artificial && kind_[j] == ColumnKind::Artificial) continue;
        const Scalar z = tab_(m_, j);
        if (z < best) {
          enter = j;
          if (bland) break;
          best = z;
        }
      }
      if (enter < 0) return true;

      Eigen::Index leave = -1;
      Scalar ratio = 0;
      for (Eigen::Index r = 0; r < m_; ++r) {
        const Scalar a = tab_(r, enter);
        if (a <= Scalar(tol::kPivot)) continue;
        const Scalar q = tab_(r, cols_) / a;
        if (leave < 0 || q < ratio - Scalar(1e-12)) {
          leave = r;
          ratio = q;
        } else if (q <= ratio + Scalar(1e-12)) {
          const bool take = bland ? basis_[r] < basis_[leave] : a > tab_(leave, enter);
          if (take) {
            leave = r;
            ratio = std::min(ratio, q);
          }
        }
      }
      if (leave < 0) return false;

      if (ratio <= Scalar(tol::kFeasibility)) {
        if (++degenerate_run > tol::kDegenerateBudget) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(leave, enter);
      if (++iterations_ > max_iterations_) {
        throw Error(ErrorCode::NumericalFailure,
                    "simplex: iteration limit reached (" + std::to_string(max_iterations_) + ")");
      }
    }
  }

  void drive_out_artificials() {
    for (Eigen::Index r = 0; r < m_; ++r) {
      if (kind_[basis_[r]] != ColumnKind::Artificial) continue;
      Eigen::Index best = -1;
      Scalar best_abs = Scalar(tol::kPivot);
      for (Eigen::Index j = 0; j < cols_; ++j) {
        if (kind_[j] == ColumnKind::Artificial) continue;
        const Scalar a = std::abs(tab_(r, j));
        if (a > best_abs) {
          best = j;
          best_abs = a;
        }
      }
      // No candidate: the row is redundant and its artificial stays at zero.
      if (best >= 0) pivot(r, best);
    }
  }

  // Recompute basic values and duals from the original columns of the basis.
  void refine(const VectorX<Scalar>& cost, VectorX<Scalar>& xb, VectorX<Scalar>& y) const {
    if (m_ == 0) return;
    MatrixX<Scalar> basis_matrix(m_, m_);
    VectorX<Scalar> cb(m_);
    for (Eigen::Index r = 0; r < m_; ++r) {
      basis_matrix.col(r) = augmented_.col(basis_[r]);
      cb(r) = cost(basis_[r]);
    }
    Eigen::FullPivLU<MatrixX<Scalar>> lu(basis_matrix);
    if (!lu.isInvertible()) return;
    VectorX<Scalar> x = lu.solve(rhs_);
    VectorX<Scalar> dual = lu.transpose().solve(cb);
    if (!x.allFinite() || !dual.allFinite()) return;
    const Scalar scale = std::max<Scalar>(Scalar(1), rhs_scale_);
    if ((x - xb).cwiseAbs().maxCoeff() > Scalar(1e-6) * scale) return;
    if (x.minCoeff() < -Scalar(tol::kFeasibility) * scale) return;
    xb = x;
    y = dual;
  }

  const LinearProgram<Scalar>& lp_;
  Eigen::Index m_ = 0;
  Eigen::Index n_ = 0;
  Eigen::Index cols_ = 0;
  MatrixX<Scalar> augmented_;
  VectorX<Scalar> rhs_;
  Scalar rhs_scale_ = 0;
  MatrixX<Scalar> tab_;
  VectorX<Scalar> cost_;
  std::vector<ColumnKind> kind_;
  std::vector<Eigen::Index> identity_col_;
  std::vector<Eigen::Index> basis_;
  std::vector<Scalar> row_sign_;
  int iterations_ = 0;
  int max_iterations_ = 0;
};

}  // namespace detail

/// Solves a dense LP with Dantzig pricing and a Bland's-rule fallback once
/// degenerate pivots exceed tol::kDegenerateBudget.
/// Throws Error(NumericalFailure) if the iteration limit is reached.
template <typename Scalar>
LpResult<Scalar> solve_lp(const LinearProgram<Scalar>& lp) {
  return detail::DenseSimplex<Scalar>(lp).run();
}

}  // namespace gasloss
