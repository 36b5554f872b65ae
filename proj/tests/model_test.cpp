#include <gtest/gtest.h>

#include <random>

#include "gasloss/error.hpp"
#include "gasloss/model.hpp"
#include "oracles.hpp"

using namespace gasloss;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ParseError;
}

RawInstance small_raw() {
  RawInstance raw;
  raw.resources = {{"cpu", 10.0, true}, {"disk", 4.0, true}};
  raw.operations = {{"add", {{"cpu", 3.0}}}, {"write", {{"cpu", 1.0}, {"disk", 2.0}}}};
  return raw;
}

}  // namespace

TEST(Instance, RejectsBadInput) {
  Eigen::MatrixXd w(1, 1);
  w << 1;
  EXPECT_EQ(code_of([&] { ResourceInstance::from_matrix(w, Eigen::VectorXd::Zero(1)); }),
            ErrorCode::NonPositiveCapacity);
  w << -1;
  EXPECT_EQ(code_of([&] { ResourceInstance::from_matrix(w, Eigen::VectorXd::Ones(1)); }),
            ErrorCode::NegativeUsage);
  EXPECT_EQ(code_of([&] { ResourceInstance({"a", "a"}, {"r"}, Eigen::MatrixXd::Ones(2, 1), Eigen::VectorXd::Ones(1)); }),
            ErrorCode::DuplicateName);
  EXPECT_EQ(code_of([&] { ResourceInstance({""}, {"r"}, Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Ones(1)); }),
            ErrorCode::EmptyName);
  EXPECT_EQ(code_of([&] { ResourceInstance({"a"}, {"r"}, Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Ones(2)); }),
            ErrorCode::LengthMismatch);
  EXPECT_EQ(code_of([&] { ResourceInstance::from_matrix(Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Ones(2)); }),
            ErrorCode::EmptyInstance);
}

TEST(Instance, RawValidation) {
  RawInstance raw = small_raw();
  raw.operations.push_back({"bad", {{"gpu", 1.0}}});
  EXPECT_EQ(code_of([&] { validate_instance(raw); }), ErrorCode::UnknownName);

  raw = small_raw();
  raw.operations[0].usage.push_back({"cpu", 2.0});
  EXPECT_EQ(code_of([&] { validate_instance(raw); }), ErrorCode::DuplicateName);

  raw = small_raw();
  EXPECT_EQ(code_of([&] { validate_instance(raw, {"memory"}); }), ErrorCode::UnknownName);
}

TEST(Instance, DropsZeroRowsWithWarning) {
  Eigen::MatrixXd w(3, 2);
  w << 1, 0, 0, 0, 0, 2;
  const auto inst = ResourceInstance::from_matrix(w, Eigen::Vector2d(1, 1));
  EXPECT_EQ(inst.operation_count(), 2);
  ASSERT_EQ(inst.dropped_operations().size(), 1u);
  EXPECT_EQ(inst.dropped_operations()[0], "op2");
  ASSERT_EQ(inst.warnings().size(), 1u);
  EXPECT_NE(inst.warnings()[0].find("op2"), std::string::npos);
}

TEST(Instance, ExclusionEqualsColumnDeletion) {
  const auto excluded = validate_instance(small_raw(), {"disk"});
  RawInstance deleted = small_raw();
  deleted.resources.pop_back();
  deleted.operations[1].usage.pop_back();
  const auto direct = validate_instance(deleted);
  EXPECT_EQ(excluded.usage(), direct.usage());
  EXPECT_EQ(excluded.capacity(), direct.capacity());
  ASSERT_EQ(excluded.excluded_resources().size(), 1u);
  EXPECT_EQ(excluded.excluded_resources()[0], "disk");
}

TEST(Instance, NonCongestingResourceIsExcluded) {
  RawInstance raw = small_raw();
  raw.resources.push_back({"storage", 100.0, false});
  raw.operations.push_back({"log", {{"storage", 8.0}}});
  const auto inst = validate_instance(raw);
  EXPECT_EQ(inst.resource_count(), 2);
  EXPECT_EQ(inst.operation_count(), 2);
  EXPECT_EQ(inst.dropped_operations(), std::vector<std::string>{"log"});
  bool mentioned = false;
  for (const auto& w : inst.warnings()) mentioned |= w.find("storage") != std::string::npos;
  EXPECT_TRUE(mentioned);
}

TEST(Normalize, DividesColumnsByCapacity) {
  const auto norm = normalize(oracle::table1());
  Eigen::MatrixXd expected(4, 2);
  expected << 2.0 / 15, 1.0 / 3, 6.0 / 15, 2.0 / 3, 9.0 / 15, 1.0 / 3, 10.0 / 15, 1.0 / 3;
  EXPECT_TRUE(norm.matrix().isApprox(expected, 1e-15));
  EXPECT_EQ(normalize(norm).matrix(), norm.matrix());
  EXPECT_EQ(normalize(norm.as_instance()).matrix(), norm.matrix());
}

TEST(GasMeasure, MinimalMeasureOfTable1) {
  const auto g = minimal_gas_measure(oracle::table1());
  EXPECT_NEAR(g.costs(0), 1.0 / 3, 1e-15);
  EXPECT_NEAR(g.costs(1), 2.0 / 3, 1e-15);
  EXPECT_NEAR(g.costs(2), 3.0 / 5, 1e-15);
  EXPECT_NEAR(g.costs(3), 2.0 / 3, 1e-15);
  EXPECT_EQ(binding_resources(oracle::table1()), (std::vector<Index>{1, 1, 0, 0}));
}

TEST(GasMeasure, MinimalityEveryReductionFailsToRepresent) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = oracle::random_small_instance(rng, 6, 4);
    const auto g = minimal_gas_measure(inst);
    EXPECT_TRUE(represents(g, inst));
    for (Index i = 0; i < inst.operation_count(); ++i) {
      GasMeasure smaller = g;
      smaller.costs(i) *= 0.999;
      EXPECT_FALSE(represents(smaller, inst));
      // A block that the reduced measure prices at exactly 1 overflows
      // operation i's binding resource.
      BlockVector x{Eigen::VectorXd::Zero(inst.operation_count())};
      x.counts(i) = 1.0 / smaller.costs(i);
      EXPECT_NEAR(gas_of(smaller, x), 1.0, 1e-12);
      EXPECT_FALSE(is_feasible(inst, x));
      x.counts(i) = 1.0 / g.costs(i);
      EXPECT_TRUE(is_feasible(inst, x));
    }
  }
}

TEST(GasMeasure, SoundnessOnSampledBlocks) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = oracle::random_small_instance(rng, 6, 4);
    const auto g = minimal_gas_measure(inst);
    for (int s = 0; s < 1000; ++s) {
      Eigen::VectorXd x(inst.operation_count());
      for (Index i = 0; i < x.size(); ++i) x(i) = unit(rng);
      x /= g.costs.dot(x);  // gas exactly 1
      EXPECT_TRUE(is_feasible(inst, BlockVector{x}));
    }
  }
}

TEST(GasMeasure, ScaleInvariance) {
  const auto inst = oracle::table1();
  const auto scaled = ResourceInstance::from_matrix(inst.usage() * 7.0, inst.capacity() * 7.0);
  EXPECT_TRUE(minimal_gas_measure(scaled).costs.isApprox(minimal_gas_measure(inst).costs, 1e-15));
}

TEST(GasMeasure, LengthMismatchThrows) {
  EXPECT_THROW(represents(GasMeasure{Eigen::VectorXd::Ones(3)}, oracle::table1()), Error);
  EXPECT_THROW(is_feasible(oracle::table1(), BlockVector{Eigen::VectorXd::Ones(3)}), Error);
  EXPECT_THROW(gas_of(GasMeasure{Eigen::VectorXd::Ones(3)}, BlockVector{Eigen::VectorXd::Ones(4)}),
               Error);
}

TEST(BlockSize, Table1MaximumAgreesWithVertexEnumeration) {
  const auto inst = oracle::table1();
  const auto size = max_block_size(inst);
  EXPECT_NEAR(size.max_size, 3.0, 1e-12);
  EXPECT_TRUE(is_feasible(inst, size.block));
  EXPECT_NEAR(size.block.counts.sum(), 3.0, 1e-12);
}
