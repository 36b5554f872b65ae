#pragma once

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace gasloss {

using Eigen::Index;

// ---------------------------------------------------------------------------
// Unvalidated input, as read from an instance file or built by a generator.

struct RawResource {
  std::string name;
  double capacity = 0.0;
  /// Non-congesting resources are tracked but never constrain a block; they
  /// are removed before any analysis.
  bool congesting = true;
};

struct RawOperation {
  std::string name;
  /// (resource name, amount) in declaration order. Resources not listed use 0.
  std::vector<std::pair<std::string, double>> usage;
};

struct RawInstance {
  std::vector<RawResource> resources;
  std::vector<RawOperation> operations;
  /// Free-form remarks carried into every report as warnings.
  std::vector<std::string> notes;
};

class ResourceInstance;

/// Validates raw input: removes non-congesting resources and any listed in
/// `exclude`, checks names and values, drops all-zero operations.
ResourceInstance validate_instance(const RawInstance& raw,
                                   const std::vector<std::string>& exclude = {});

// ---------------------------------------------------------------------------

/// Per-operation usage matrix W (operations x resources) with capacities B.
/// Usage entries are per-operation maxima. Immutable once constructed; every
/// constructor validates and drops all-zero operation rows with a warning.
class ResourceInstance {
 public:
  ResourceInstance(std::vector<std::string> operation_names,
                   std::vector<std::string> resource_names, Eigen::MatrixXd usage,
                   Eigen::VectorXd capacity);

  /// Names default to op1.., r1..
  static ResourceInstance from_matrix(const Eigen::MatrixXd& usage,
                                      const Eigen::VectorXd& capacity);

  const Eigen::MatrixXd& usage() const { return usage_; }
  const Eigen::VectorXd& capacity() const { return capacity_; }
  const std::vector<std::string>& operation_names() const { return operation_names_; }
  const std::vector<std::string>& resource_names() const { return resource_names_; }
  Index operation_count() const { return usage_.rows(); }
  Index resource_count() const { return usage_.cols(); }

  /// Dropped rows, excluded resources, and notes attached to the input.
  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::vector<std::string>& excluded_resources() const { return excluded_; }
  /// Operations removed because they use no (remaining) resource.
  const std::vector<std::string>& dropped_operations() const { return dropped_; }

  /// Sub-instance on the given resource columns (in the given order). Rows
  /// that become all-zero are dropped. Throws EmptyInstance when none remain.
  ResourceInstance restrict_resources(const std::vector<Index>& columns) const;

  Index operation_index(const std::string& name) const;  // -1 if absent
  Index resource_index(const std::string& name) const;   // -1 if absent

 private:
  friend ResourceInstance validate_instance(const RawInstance&, const std::vector<std::string>&);

  std::vector<std::string> operation_names_;
  std::vector<std::string> resource_names_;
  Eigen::MatrixXd usage_;
  Eigen::VectorXd capacity_;
  std::vector<std::string> warnings_;
  std::vector<std::string> excluded_;
  std::vector<std::string> dropped_;
};

/// W' = W with column j divided by B_j.
class NormalizedInstance {
 public:
  NormalizedInstance(std::vector<std::string> operation_names,
                     std::vector<std::string> resource_names, Eigen::MatrixXd matrix);

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const std::vector<std::string>& operation_names() const { return operation_names_; }
  const std::vector<std::string>& resource_names() const { return resource_names_; }
  Index operation_count() const { return matrix_.rows(); }
  Index resource_count() const { return matrix_.cols(); }

  /// The same data as an instance with unit capacities.
  ResourceInstance as_instance() const;

 private:
  std::vector<std::string> operation_names_;
  std::vector<std::string> resource_names_;
  Eigen::MatrixXd matrix_;
};

/// Per-operation cost vector g; a block x is gas-feasible when g.x <= 1.
struct GasMeasure {
  Eigen::VectorXd costs;
  Index size() const { return costs.size(); }
};

/// Operation counts of a block. Fractional counts are allowed.
struct BlockVector {
  Eigen::VectorXd counts;
  Index size() const { return counts.size(); }
};

struct SizeReport {
  /// Largest 1-norm of any feasible block.
  double max_size = 0.0;
  BlockVector block;
};

/// Relative slack on capacities when testing feasibility.
inline constexpr double kFeasibilityTolerance = 1e-9;

NormalizedInstance normalize(const ResourceInstance& instance);
NormalizedInstance normalize(const NormalizedInstance& instance);

/// g_i = max_j w_ij / B_j, the pointwise-smallest representing measure.
GasMeasure minimal_gas_measure(const ResourceInstance& instance);

/// For each operation, the first resource attaining max_j w_ij / B_j.
std::vector<Index> binding_resources(const ResourceInstance& instance);

/// True iff g dominates the minimal measure pointwise (up to 1e-12 relative
/// rounding), which is equivalent to g representing the instance.
bool represents(const GasMeasure& g, const ResourceInstance& instance);

bool is_feasible(const ResourceInstance& instance, const BlockVector& x);

double gas_of(const GasMeasure& g, const BlockVector& x);

SizeReport max_block_size(const ResourceInstance& instance);

}  // namespace gasloss
