#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "gasloss/model.hpp"

namespace gasloss {

/// Resource column indices belonging to one group.
using ResourceGroup = std::vector<Index>;

/// Resources split into groups, each priced by its own single-dimensional
/// measure g^(r)_i = max_{j in group} w_ij / B_j.
struct PartitionPlan {
  std::vector<ResourceGroup> groups;
  std::vector<GasMeasure> group_measures;
  Eigen::VectorXd group_losses;
  /// max over groups of group_losses
  double loss = 1.0;
};

/// Single-dimensional approximability of the sub-instance made of the
/// group's columns. Operations idle on every column of the group are left
/// out; a group no operation touches has loss 1.
double group_loss(const ResourceInstance& instance, const ResourceGroup& group);

/// Throws InvalidPartition unless `groups` are non-empty, disjoint and cover
/// every resource exactly once.
PartitionPlan partition_loss(const ResourceInstance& instance,
                             const std::vector<ResourceGroup>& groups);

inline constexpr Index kExactEnumerationLimit = 12;

/// Minimum-loss partition into at most k groups by exhaustive set-partition
/// enumeration with branch-and-bound. Among optima the lexicographically
/// smallest restricted-growth assignment wins, so groups come out ordered by
/// their smallest resource. Throws TooManyResources above `limit`.
PartitionPlan optimal_partition_exact(const ResourceInstance& instance, Index k,
                                      Index limit = kExactEnumerationLimit);

/// Agglomerative heuristic: start from singletons and repeatedly apply the
/// merge giving the smallest partition loss (ties: lowest group indices)
/// until k groups remain.
PartitionPlan optimal_partition_greedy(const ResourceInstance& instance, Index k);

/// Equal-cardinality-partition reduction instance. Element l of the multiset
/// owns operations (2l, 2l+1) and resources (2l, 2l+1) with the 2x2 usage
/// block [[1, 1-kappa_l], [1-kappa_l, 1]], kappa_l = 2 s_l eps / (1 + s_l eps),
/// and unit capacities.
struct EcpInstance {
  std::vector<std::int64_t> values;
  double epsilon = 0.0;
  Eigen::VectorXd kappa;
  RawInstance raw;

  /// Half the multiset size and half its sum.
  std::int64_t half_count() const { return static_cast<std::int64_t>(values.size()) / 2; }
  std::int64_t half_sum() const;
  /// Loss of a balanced pair-preserving split: half_count + half_sum * epsilon.
  double balanced_loss() const;
  ResourceInstance instance() const { return validate_instance(raw); }
  /// Two groups holding both resources of every element, split by `first`.
  std::vector<ResourceGroup> split_groups(const std::vector<bool>& first) const;
};

/// Throws OddCardinality, OddSum, or BadEpsilon (epsilon outside (0, 1/(2T))).
EcpInstance generate_ecp(const std::vector<std::int64_t>& values, double epsilon);

}  // namespace gasloss
