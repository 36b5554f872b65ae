#pragma once

// Test-only reference computations. Nothing here calls the simplex engine or
// the game solver, so they can serve as independent checks on both.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "gasloss/generators.hpp"
#include "gasloss/model.hpp"

namespace gasloss::oracle {

/// max c.x  s.t.  A x <= b, x >= 0 by enumerating every vertex: each choice
/// of n tight constraints among the m rows and the n bounds x >= 0. Only
/// valid for bounded problems; returns nullopt when no vertex is feasible.
inline std::optional<double> vertex_enumeration_max(const Eigen::VectorXd& c,
                                                    const Eigen::MatrixXd& A,
                                                    const Eigen::VectorXd& b) {
  const Eigen::Index n = c.size();
  const Eigen::Index m = A.rows();
  Eigen::MatrixXd all(m + n, n);
  Eigen::VectorXd rhs(m + n);
  all.topRows(m) = A;
  rhs.head(m) = b;
  all.bottomRows(n) = -Eigen::MatrixXd::Identity(n, n);
  rhs.tail(n).setZero();

  std::optional<double> best;
  std::vector<Eigen::Index> pick;
  std::function<void(Eigen::Index)> choose = [&](Eigen::Index start) {
    if (static_cast<Eigen::Index>(pick.size()) == n) {
      Eigen::MatrixXd M(n, n);
      Eigen::VectorXd r(n);
      for (Eigen::Index k = 0; k < n; ++k) {
        M.row(k) = all.row(pick[static_cast<std::size_t>(k)]);
        r(k) = rhs(pick[static_cast<std::size_t>(k)]);
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
      if (!lu.isInvertible()) return;
      const Eigen::VectorXd x = lu.solve(r);
      if (((all * x - rhs).array() > 1e-9).any()) return;
      const double v = c.dot(x);
      if (!best || v > *best) best = v;
      return;
    }
    for (Eigen::Index k = start; k < m + n; ++k) {
      pick.push_back(k);
      choose(k + 1);
      pick.pop_back();
    }
  };
  choose(0);
  return best;
}

/// Value of the zero-sum game where rows minimize, from the row LP
/// min v s.t. U'x <= v, sum x = 1 solved by vertex enumeration after
/// shifting U to be >= 1 (max 1'p s.t. U'p <= 1, value 1 / max).
inline double game_value(const Eigen::MatrixXd& U) {
  const double shift = 1.0 - U.minCoeff();
  const Eigen::MatrixXd S = U.array() + shift;
  const auto best = vertex_enumeration_max(Eigen::VectorXd::Ones(U.rows()), S.transpose(),
                                           Eigen::VectorXd::Ones(U.cols()));
  return 1.0 / *best - shift;
}

/// Approximability from its definition: max g.x s.t. W'x <= 1.
inline double approximability(const ResourceInstance& inst) {
  const Eigen::MatrixXd w = normalize(inst).matrix();
  const Eigen::VectorXd g = w.rowwise().maxCoeff();
  return *vertex_enumeration_max(g, w.transpose(), Eigen::VectorXd::Ones(w.cols()));
}

/// Every labelling of n items with labels < k (k^n of them) reduced to the
/// restricted-growth form, visited once each.
inline void for_each_partition(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int pos, int used) {
    if (pos == n) {
      f(label);
      return;
    }
    for (int g = 0; g <= std::min(used, k - 1); ++g) {
      label[static_cast<std::size_t>(pos)] = g;
      rec(pos + 1, std::max(used, g + 1));
    }
  };
  rec(0, 0);
}

/// Random instances with integer usages in {0..10} (no zero rows) and
/// capacities in {1..10}, sized ops in [1, max_ops], resources in [1, max_res].
inline ResourceInstance random_small_instance(std::mt19937_64& rng, int max_ops, int max_res,
                                              double density = 0.6) {
  const int ops = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_ops));
  const int res = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_res));
  return validate_instance(random_instance(ops, res, density, rng()));
}

inline ResourceInstance table1() {
  Eigen::MatrixXd w(4, 2);
  w << 2, 1, 6, 2, 9, 1, 10, 1;
  return ResourceInstance::from_matrix(w, Eigen::Vector2d(15, 3));
}

inline ResourceInstance table3() {
  Eigen::MatrixXd w(3, 2);
  w << 0, 1, 1, 1, 1, 0;
  return ResourceInstance::from_matrix(w, Eigen::Vector2d(1, 1));
}

}  // namespace gasloss::oracle
