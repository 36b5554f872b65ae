#include "gasloss/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "gasloss/approx.hpp"
#include "gasloss/error.hpp"

namespace gasloss {
namespace {

// Losses closer than this are treated as equal when breaking ties.
constexpr double kTieTolerance = 1e-11;

GasMeasure group_measure(const ResourceInstance& instance, const ResourceGroup& group) {
  const Eigen::MatrixXd w = normalize(instance).matrix();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(instance.operation_count());
  for (Index j : group) g = g.cwiseMax(w.col(j));
  return GasMeasure{g};
}

void check_partition(const ResourceInstance& instance, const std::vector<ResourceGroup>& groups) {
  std::vector<int> seen(static_cast<std::size_t>(instance.resource_count()), 0);
  for (const auto& group : groups) {
    if (group.empty()) throw Error(ErrorCode::InvalidPartition, "partition has an empty group");
    for (Index j : group) {
      if (j < 0 || j >= instance.resource_count()) {
        throw Error(ErrorCode::InvalidPartition,
                    "partition refers to resource index " + std::to_string(j));
      }
      if (seen[static_cast<std::size_t>(j)]++ != 0) {
        throw Error(ErrorCode::InvalidPartition,
                    "resource '" + instance.resource_names()[j] + "' appears in two groups");
      }
    }
  }
  for (std::size_t j = 0; j < seen.size(); ++j) {
    if (seen[j] == 0) {
      throw Error(ErrorCode::InvalidPartition,
                  "resource '" + instance.resource_names()[j] + "' is in no group");
    }
  }
}

class ExactSearch {
 public:
  ExactSearch(const ResourceInstance& instance, Index k)
      : instance_(instance),
        n_(static_cast<int>(instance.resource_count())),
        k_(static_cast<int>(std::min<Index>(k, instance.resource_count()))),
        cache_(std::size_t{1} << n_, std::numeric_limits<double>::quiet_NaN()) {}

  std::vector<std::uint32_t> run() {
    const std::uint32_t all = (std::uint32_t{1} << n_) - 1;
    std::vector<std::uint32_t> groups;
    recurse(all, groups, 1.0);
    return best_groups_;
  }

 private:
  double loss_of(std::uint32_t mask) {
    double& slot = cache_[mask];
    if (std::isnan(slot)) slot = group_loss(instance_, to_group(mask));
    return slot;
  }

  ResourceGroup to_group(std::uint32_t mask) const {
    ResourceGroup g;
    for (int j = 0; j < n_; ++j) {
      if (mask & (std::uint32_t{1} << j)) g.push_back(j);
    }
    return g;
  }

  std::vector<int> assignment(const std::vector<std::uint32_t>& groups) const {
    std::vector<int> a(static_cast<std::size_t>(n_), 0);
    for (std::size_t r = 0; r < groups.size(); ++r) {
      for (int j = 0; j < n_; ++j) {
        if (groups[r] & (std::uint32_t{1} << j)) a[static_cast<std::size_t>(j)] = static_cast<int>(r);
      }
    }
    return a;
  }

  bool worse_than_incumbent(double loss) const {
    return have_best_ && loss > best_loss_ + kTieTolerance;
  }

  void consider(const std::vector<std::uint32_t>& groups, double loss) {
    std::vector<int> a = assignment(groups);
    const bool better = !have_best_ || loss < best_loss_ - kTieTolerance;
    const bool tie = have_best_ && !better && loss <= best_loss_ + kTieTolerance;
    if (better || (tie && a < best_assignment_)) {
      have_best_ = true;
      best_loss_ = better ? loss : std::min(best_loss_, loss);
      best_assignment_ = std::move(a);
      best_groups_ = groups;
    }
  }

  // Each level closes one group: the one holding the lowest unassigned
  // resource. Closed groups have exact losses, which bound the final loss.
  void recurse(std::uint32_t remaining, std::vector<std::uint32_t>& groups, double current) {
    if (remaining == 0) {
      consider(groups, current);
      return;
    }
    const std::uint32_t lowest = remaining & (~remaining + 1);
    const std::uint32_t rest = remaining ^ lowest;
    if (static_cast<int>(groups.size()) == k_ - 1) {
      const double loss = std::max(current, loss_of(remaining));
      if (worse_than_incumbent(loss)) return;
      groups.push_back(remaining);
      consider(groups, loss);
      groups.pop_back();
      return;
    }
    // Enumerate subsets of `rest` in increasing order so that the
    // lexicographically smaller assignments are visited first.
    std::uint32_t sub = 0;
    for (;;) {
      const std::uint32_t group = lowest | sub;
      const double loss = std::max(current, loss_of(group));
      if (!worse_than_incumbent(loss)) {
        groups.push_back(group);
        recurse(remaining ^ group, groups, loss);
        groups.pop_back();
      }
      if (sub == rest) break;
      sub = (sub - rest) & rest;
    }
  }

  const ResourceInstance& instance_;
  int n_;
  int k_;
  std::vector<double> cache_;
  bool have_best_ = false;
  double best_loss_ = 0.0;
  std::vector<int> best_assignment_;
  std::vector<std::uint32_t> best_groups_;
};

}  // namespace

double group_loss(const ResourceInstance& instance, const ResourceGroup& group) {
  bool touched = false;
  for (Index j : group) touched = touched || (instance.usage().col(j).array() > 0.0).any();
  if (!touched) return 1.0;
  return approximability(instance.restrict_resources(group)).alpha;
}

PartitionPlan partition_loss(const ResourceInstance& instance,
                             const std::vector<ResourceGroup>& groups) {
  check_partition(instance, groups);
  PartitionPlan plan;
  plan.groups = groups;
  plan.group_losses.resize(static_cast<Index>(groups.size()));
  for (std::size_t r = 0; r < groups.size(); ++r) {
    plan.group_measures.push_back(group_measure(instance, groups[r]));
    plan.group_losses(static_cast<Index>(r)) = group_loss(instance, groups[r]);
  }
  plan.loss = plan.group_losses.maxCoeff();
  return plan;
}

PartitionPlan optimal_partition_exact(const ResourceInstance& instance, Index k, Index limit) {
  if (k < 1) throw Error(ErrorCode::InvalidPartition, "number of groups must be positive");
  const Index n = instance.resource_count();
  if (n > limit || n > 30) {
    throw Error(ErrorCode::TooManyResources,
                "exact partition search supports at most " + std::to_string(limit) +
                    " resources, instance has " + std::to_string(n));
  }
  const std::vector<std::uint32_t> masks = ExactSearch(instance, k).run();
  std::vector<ResourceGroup> groups;
  for (std::uint32_t mask : masks) {
    ResourceGroup g;
    for (Index j = 0; j < n; ++j) {
      if (mask & (std::uint32_t{1} << j)) g.push_back(j);
    }
    groups.push_back(std::move(g));
  }
  return partition_loss(instance, groups);
}

PartitionPlan optimal_partition_greedy(const ResourceInstance& instance, Index k) {
  if (k < 1) throw Error(ErrorCode::InvalidPartition, "number of groups must be positive");
  std::map<ResourceGroup, double> cache;
  auto loss_of = [&](const ResourceGroup& g) {
    auto it = cache.find(g);
    if (it != cache.end()) return it->second;
    const double loss = group_loss(instance, g);
    cache.emplace(g, loss);
    return loss;
  };

  std::vector<ResourceGroup> groups;
  for (Index j = 0; j < instance.resource_count(); ++j) groups.push_back({j});

  while (static_cast<Index>(groups.size()) > k) {
    std::vector<double> losses;
    for (const auto& g : groups) losses.push_back(loss_of(g));
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_a = 0, best_b = 1;
    for (std::size_t a = 0; a < groups.size(); ++a) {
      for (std::size_t b = a + 1; b < groups.size(); ++b) {
        ResourceGroup merged = groups[a];
        merged.insert(merged.end(), groups[b].begin(), groups[b].end());
        std::sort(merged.begin(), merged.end());
        double loss = loss_of(merged);
        for (std::size_t r = 0; r < groups.size(); ++r) {
          if (r != a && r != b) loss = std::max(loss, losses[r]);
        }
        if (loss < best - kTieTolerance) {
          best = loss;
          best_a = a;
          best_b = b;
        }
      }
    }
    groups[best_a].insert(groups[best_a].end(), groups[best_b].begin(), groups[best_b].end());
    std::sort(groups[best_a].begin(), groups[best_a].end());
    groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(best_b));
  }
  return partition_loss(instance, groups);
}

std::int64_t EcpInstance::half_sum() const {
  return std::accumulate(values.begin(), values.end(), std::int64_t{0}) / 2;
}

double EcpInstance::balanced_loss() const {
  return static_cast<double>(half_count()) + static_cast<double>(half_sum()) * epsilon;
}

std::vector<ResourceGroup> EcpInstance::split_groups(const std::vector<bool>& first) const {
  if (first.size() != values.size()) {
    throw Error(ErrorCode::LengthMismatch, "split selector must have one entry per element");
  }
  std::vector<ResourceGroup> groups(2);
  for (std::size_t l = 0; l < values.size(); ++l) {
    auto& g = groups[first[l] ? 0 : 1];
    g.push_back(static_cast<Index>(2 * l));
    g.push_back(static_cast<Index>(2 * l + 1));
  }
  return groups;
}

EcpInstance generate_ecp(const std::vector<std::int64_t>& values, double epsilon) {
  if (values.empty() || values.size() % 2 != 0) {
    throw Error(ErrorCode::OddCardinality, "multiset must have a positive even number of elements");
  }
  for (auto v : values) {
    if (v <= 0) throw Error(ErrorCode::ParseError, "multiset elements must be positive integers");
  }
  const std::int64_t total = std::accumulate(values.begin(), values.end(), std::int64_t{0});
  if (total % 2 != 0) throw Error(ErrorCode::OddSum, "multiset sum must be even");
  const double bound = 1.0 / static_cast<double>(total);  // 1 / (2T)
  if (!(epsilon > 0.0) || !(epsilon < bound)) {
    std::ostringstream msg;
    msg << "epsilon must lie in (0, " << bound << "), got " << epsilon;
    throw Error(ErrorCode::BadEpsilon, msg.str());
  }

  EcpInstance ecp;
  ecp.values = values;
  ecp.epsilon = epsilon;
  ecp.kappa.resize(static_cast<Index>(values.size()));
  for (std::size_t l = 0; l < values.size(); ++l) {
    const double se = static_cast<double>(values[l]) * epsilon;
    const double kappa = 2.0 * se / (1.0 + se);
    ecp.kappa(static_cast<Index>(l)) = kappa;
    const std::string id = std::to_string(l + 1);
    ecp.raw.resources.push_back({"res" + id + "a", 1.0, true});
    ecp.raw.resources.push_back({"res" + id + "b", 1.0, true});
    ecp.raw.operations.push_back({"op" + id + "a", {{"res" + id + "a", 1.0}, {"res" + id + "b", 1.0 - kappa}}});
    ecp.raw.operations.push_back({"op" + id + "b", {{"res" + id + "a", 1.0 - kappa}, {"res" + id + "b", 1.0}}});
  }
  return ecp;
}

}  // namespace gasloss
