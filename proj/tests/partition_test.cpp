#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "gasloss/approx.hpp"
#include "gasloss/partition.hpp"
#include "oracles.hpp"

using namespace gasloss;

namespace {

// Group loss recomputed from scratch: keep the group's columns and the rows
// that touch them, then enumerate vertices.
double brute_group_loss(const ResourceInstance& inst, const std::vector<Index>& cols) {
  std::vector<Index> rows;
  for (Index i = 0; i < inst.operation_count(); ++i) {
    bool touches = false;
    for (Index j : cols) touches |= inst.usage()(i, j) > 0;
    if (touches) rows.push_back(i);
  }
  if (rows.empty()) return 1.0;
  Eigen::MatrixXd w(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  Eigen::VectorXd b(static_cast<Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    b(static_cast<Index>(c)) = inst.capacity()(cols[c]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      w(static_cast<Index>(r), static_cast<Index>(c)) = inst.usage()(rows[r], cols[c]);
    }
  }
  return oracle::approximability(ResourceInstance::from_matrix(w, b));
}

double brute_optimal_loss(const ResourceInstance& inst, int k) {
  const int n = static_cast<int>(inst.resource_count());
  double best = std::numeric_limits<double>::infinity();
  oracle::for_each_partition(n, k, [&](const std::vector<int>& label) {
    double loss = 1.0;
    for (int g = 0; g < k; ++g) {
      std::vector<Index> cols;
      for (int j = 0; j < n; ++j)
        if (label[static_cast<std::size_t>(j)] == g) cols.push_back(j);
      if (!cols.empty()) loss = std::max(loss, brute_group_loss(inst, cols));
    }
    best = std::min(best, loss);
  });
  return best;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ParseError;
}

// Multiset of 2h values that splits into two halves of equal count and sum.
std::vector<std::int64_t> random_yes_values(std::mt19937_64& rng) {
  const int h = 1 + static_cast<int>(rng() % 3);
  std::vector<std::int64_t> a, b;
  for (int i = 0; i < h; ++i) a.push_back(1 + static_cast<std::int64_t>(rng() % 5));
  b = a;
  for (int moves = 0; moves < 4 && h > 1; ++moves) {
    const auto from = rng() % static_cast<std::uint64_t>(h);
    const auto to = rng() % static_cast<std::uint64_t>(h);
    if (from != to && b[from] > 1) {
      --b[from];
      ++b[to];
    }
  }
  std::vector<std::int64_t> all = a;
  all.insert(all.end(), b.begin(), b.end());
  std::shuffle(all.begin(), all.end(), rng);
  return all;
}

}  // namespace

TEST(Partition, SingleGroupEqualsApproximability) {
  const auto inst = oracle::table1();
  const auto plan = partition_loss(inst, {{0, 1}});
  EXPECT_NEAR(plan.loss, 11.0 / 8.0, 1e-12);
  EXPECT_NEAR(optimal_partition_exact(inst, 1).loss, 11.0 / 8.0, 1e-12);
}

TEST(Partition, SingletonsAreExact) {
  const auto plan = partition_loss(oracle::table1(), {{0}, {1}});
  EXPECT_NEAR(plan.loss, 1.0, 1e-12);
  ASSERT_EQ(plan.group_measures.size(), 2u);
  EXPECT_NEAR(plan.group_measures[0].costs(3), 10.0 / 15.0, 1e-15);
  EXPECT_NEAR(plan.group_measures[1].costs(1), 2.0 / 3.0, 1e-15);
}

TEST(Partition, UntouchedGroupHasUnitLoss) {
  Eigen::MatrixXd w(2, 3);
  w << 1, 1, 0, 1, 0, 0;
  const auto inst = ResourceInstance::from_matrix(w, Eigen::Vector3d(1, 1, 1));
  EXPECT_DOUBLE_EQ(group_loss(inst, {2}), 1.0);
}

TEST(Partition, InvalidGroupsThrow) {
  const auto inst = oracle::table1();
  EXPECT_EQ(code_of([&] { partition_loss(inst, {{0}, {}}); }), ErrorCode::InvalidPartition);
  EXPECT_EQ(code_of([&] { partition_loss(inst, {{0, 1}, {1}}); }), ErrorCode::InvalidPartition);
  EXPECT_EQ(code_of([&] { partition_loss(inst, {{0}}); }), ErrorCode::InvalidPartition);
  EXPECT_EQ(code_of([&] { partition_loss(inst, {{0, 2}, {1}}); }), ErrorCode::InvalidPartition);
}

TEST(Partition, ExactMatchesBruteForce) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = oracle::random_small_instance(rng, 5, 5);
    for (int k = 1; k <= 3; ++k) {
      const auto plan = optimal_partition_exact(inst, k);
      EXPECT_NEAR(plan.loss, brute_optimal_loss(inst, k), 1e-8) << "trial " << trial << " k " << k;
      EXPECT_LE(plan.groups.size(), static_cast<std::size_t>(k));
      EXPECT_NEAR(partition_loss(inst, plan.groups).loss, plan.loss, 1e-12);
    }
  }
}

TEST(Partition, MonotoneInGroupCountAndGreedyIsUpperBound) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = oracle::random_small_instance(rng, 6, 6);
    double previous = std::numeric_limits<double>::infinity();
    for (Index k = 1; k <= inst.resource_count(); ++k) {
      const double exact = optimal_partition_exact(inst, k).loss;
      EXPECT_LE(exact, previous + 1e-12);
      EXPECT_GE(optimal_partition_greedy(inst, k).loss, exact - 1e-12);
      previous = exact;
    }
    EXPECT_NEAR(previous, 1.0, 1e-12);
  }
}

TEST(Partition, ExactGroupsStartAtSmallestResource) {
  const auto plan = optimal_partition_exact(oracle::table1(), 2);
  ASSERT_EQ(plan.groups.size(), 2u);
  EXPECT_EQ(plan.groups[0], ResourceGroup{0});
  EXPECT_EQ(plan.groups[1], ResourceGroup{1});
}

TEST(Partition, ExactRefusesLargeInstances) {
  const auto inst = ResourceInstance::from_matrix(Eigen::MatrixXd::Ones(2, 13), Eigen::VectorXd::Ones(13));
  EXPECT_EQ(code_of([&] { optimal_partition_exact(inst, 2); }), ErrorCode::TooManyResources);
  EXPECT_EQ(code_of([&] { optimal_partition_exact(oracle::table1(), 2, 1); }),
            ErrorCode::TooManyResources);
  EXPECT_GE(optimal_partition_greedy(inst, 2).loss, 1.0);
}

TEST(Ecp, PairGameValue) {
  const auto ecp = generate_ecp({1, 1}, 0.2);
  EXPECT_NEAR(ecp.kappa(0), 2 * 0.2 / 1.2, 1e-15);
  const auto inst = ecp.instance();
  const auto plan = partition_loss(inst, ecp.split_groups({true, false}));
  EXPECT_NEAR(plan.group_losses(0), 1.2, 1e-12);
  EXPECT_NEAR(plan.group_losses(1), 1.2, 1e-12);
  EXPECT_NEAR(ecp.balanced_loss(), 1.2, 1e-15);
}

TEST(Ecp, YesAndNoInstances) {
  const auto yes = generate_ecp({1, 3, 2, 2}, 0.1);
  EXPECT_EQ(yes.half_count(), 2);
  EXPECT_EQ(yes.half_sum(), 4);
  EXPECT_NEAR(optimal_partition_exact(yes.instance(), 2).loss, 2.4, 1e-8);
  EXPECT_NEAR(partition_loss(yes.instance(), yes.split_groups({true, true, false, false})).loss, 2.4,
              1e-8);

  const auto no = generate_ecp({1, 1, 1, 5}, 0.1);
  const double loss = optimal_partition_exact(no.instance(), 2).loss;
  EXPECT_NEAR(loss, 2.6, 1e-8);
  EXPECT_GE(loss, no.balanced_loss() + no.epsilon - 1e-9);
}

TEST(Ecp, RandomYesInstancesReachBalancedLoss) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const auto values = random_yes_values(rng);
    std::int64_t total = 0;
    for (auto v : values) total += v;
    const auto ecp = generate_ecp(values, 0.5 / static_cast<double>(total));
    const auto inst = ecp.instance();
    EXPECT_NEAR(optimal_partition_exact(inst, 2).loss, ecp.balanced_loss(), 1e-8) << "trial " << trial;
  }
}

TEST(Ecp, InvalidInputs) {
  EXPECT_EQ(code_of([] { generate_ecp({1, 2, 3}, 0.1); }), ErrorCode::OddCardinality);
  EXPECT_EQ(code_of([] { generate_ecp({1, 2}, 0.1); }), ErrorCode::OddSum);
  EXPECT_EQ(code_of([] { generate_ecp({1, 3}, 0.0); }), ErrorCode::BadEpsilon);
  EXPECT_EQ(code_of([] { generate_ecp({1, 3}, 0.25); }), ErrorCode::BadEpsilon);
  EXPECT_EQ(code_of([] { generate_ecp({0, 2}, 0.1); }), ErrorCode::ParseError);
}
