#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "gasloss/error.hpp"
#include "gasloss/lp.hpp"

namespace gasloss {

/// Equilibrium of a finite two-player zero-sum game with payoff matrix U
/// (row strategy x, column strategy y, expected payoff x' U y).
template <typename Scalar = double>
struct GameSolution {
  Scalar value = 0;
  VectorX<Scalar> row_strategy;
  VectorX<Scalar> column_strategy;
  /// Game values obtained independently from the row player's and the
  /// column player's linear programs.
  Scalar row_lp_value = 0;
  Scalar column_lp_value = 0;
};

namespace detail {

// Row player minimizes. Both LPs are posed on U + shift with every entry >= 1,
// so the value is at least 1 and the classical p = x / v substitution applies:
//   row:    max 1'p  s.t.  U'p <= 1,  p >= 0   (value = 1 / sum p)
//   column: min 1'q  s.t.  U q >= 1,  q >= 0   (value = 1 / sum q)
template <typename Scalar>
GameSolution<Scalar> solve_min_row_game(const MatrixX<Scalar>& payoff) {
  const Eigen::Index rows = payoff.rows();
  const Eigen::Index cols = payoff.cols();
  const Scalar shift = Scalar(1) - payoff.minCoeff();
  const MatrixX<Scalar> shifted = payoff.array() + shift;

  LinearProgram<Scalar> row_lp;
  row_lp.direction = Direction::Maximize;
  row_lp.objective = VectorX<Scalar>::Ones(rows);
  row_lp.constraints = shifted.transpose();
  row_lp.bounds = VectorX<Scalar>::Ones(cols);
  const LpResult<Scalar> row = solve_lp(row_lp);

  LinearProgram<Scalar> col_lp;
  col_lp.direction = Direction::Minimize;
  col_lp.objective = VectorX<Scalar>::Ones(cols);
  col_lp.constraints = -shifted;
  col_lp.bounds = -VectorX<Scalar>::Ones(rows);
  const LpResult<Scalar> col = solve_lp(col_lp);

  if (!row.optimal() || !col.optimal() || !(row.objective_value > Scalar(0)) ||
      !(col.objective_value > Scalar(0))) {
    throw Error(ErrorCode::NumericalFailure, "zero-sum game: strategy LP did not reach an optimum");
  }

  GameSolution<Scalar> sol;
  const Scalar row_sum = row.primal.sum();
  const Scalar col_sum = col.primal.sum();
  sol.row_strategy = row.primal / row_sum;
  sol.column_strategy = col.primal / col_sum;
  sol.row_lp_value = Scalar(1) / row.objective_value - shift;
  sol.column_lp_value = Scalar(1) / col.objective_value - shift;
  sol.value = sol.row_lp_value;
  return sol;
}

}  // namespace detail

/// Value and equilibrium strategies of the game with payoff matrix `payoff`.
/// With row_minimizes the row player pays x'Uy; otherwise the row player
/// receives it. Throws Error(NumericalFailure) when either LP fails.
template <typename Derived>
GameSolution<typename Derived::Scalar> solve_zero_sum(const Eigen::MatrixBase<Derived>& payoff,
                                                      bool row_minimizes = true) {
  using Scalar = typename Derived::Scalar;
  if (payoff.rows() == 0 || payoff.cols() == 0) {
    throw Error(ErrorCode::LengthMismatch, "zero-sum game: empty payoff matrix");
  }
  if (!payoff.allFinite()) {
    throw Error(ErrorCode::NumericalFailure, "zero-sum game: non-finite payoff");
  }
  if (row_minimizes) return detail::solve_min_row_game<Scalar>(payoff.eval());

  GameSolution<Scalar> sol = detail::solve_min_row_game<Scalar>(-payoff.eval());
  sol.value = -sol.value;
  sol.row_lp_value = -sol.row_lp_value;
  sol.column_lp_value = -sol.column_lp_value;
  return sol;
}

/// Checks simplex membership of both strategies and that neither player has
/// a pure deviation improving on `sol.value` by more than `tolerance`.
template <typename Derived, typename Scalar>
bool verify_equilibrium(const Eigen::MatrixBase<Derived>& payoff, const GameSolution<Scalar>& sol,
                        Scalar tolerance, bool row_minimizes = true) {
  const auto& x = sol.row_strategy;
  const auto& y = sol.column_strategy;
  if (x.size() != payoff.rows() || y.size() != payoff.cols()) return false;
  if (!x.allFinite() || !y.allFinite()) return false;
  if (x.minCoeff() < -tolerance || y.minCoeff() < -tolerance) return false;
  if (std::abs(x.sum() - Scalar(1)) > tolerance || std::abs(y.sum() - Scalar(1)) > tolerance) {
    return false;
  }
  const VectorX<Scalar> column_payoffs = payoff.transpose() * x;
  const VectorX<Scalar> row_payoffs = payoff * y;
  if (row_minimizes) {
    return column_payoffs.maxCoeff() <= sol.value + tolerance &&
           row_payoffs.minCoeff() >= sol.value - tolerance;
  }
  return column_payoffs.minCoeff() >= sol.value - tolerance &&
         row_payoffs.maxCoeff() <= sol.value + tolerance;
}

}  // namespace gasloss
