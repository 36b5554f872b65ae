#include "gasloss/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "gasloss/error.hpp"
#include "gasloss/lp.hpp"

namespace gasloss {
namespace {

void check_names(const std::vector<std::string>& names, const char* what) {
  std::set<std::string> seen;
  for (const auto& name : names) {
    if (name.empty()) {
      throw Error(ErrorCode::EmptyName, std::string("empty ") + what + " name");
    }
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::DuplicateName, std::string("duplicate ") + what + " name '" + name + "'");
    }
  }
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

ResourceInstance::ResourceInstance(std::vector<std::string> operation_names,
                                   std::vector<std::string> resource_names,
                                   Eigen::MatrixXd usage, Eigen::VectorXd capacity) {
  if (usage.rows() != static_cast<Index>(operation_names.size()) ||
      usage.cols() != static_cast<Index>(resource_names.size()) ||
      capacity.size() != usage.cols()) {
    throw Error(ErrorCode::LengthMismatch, "instance: usage matrix shape does not match names");
  }
  check_names(operation_names, "operation");
  check_names(resource_names, "resource");
  for (Index j = 0; j < capacity.size(); ++j) {
    if (!std::isfinite(capacity(j)) || !(capacity(j) > 0.0)) {
      throw Error(ErrorCode::NonPositiveCapacity,
                  "resource '" + resource_names[j] + "': capacity must be positive, got " +
                      format_number(capacity(j)));
    }
  }
  for (Index i = 0; i < usage.rows(); ++i) {
    for (Index j = 0; j < usage.cols(); ++j) {
      if (!std::isfinite(usage(i, j)) || usage(i, j) < 0.0) {
        throw Error(ErrorCode::NegativeUsage, "operation '" + operation_names[i] + "', resource '" +
                                                  resource_names[j] +
                                                  "': usage must be a nonnegative number");
      }
    }
  }

  std::vector<Index> kept;
  for (Index i = 0; i < usage.rows(); ++i) {
    if ((usage.row(i).array() > 0.0).any()) {
      kept.push_back(i);
    } else {
      warnings_.push_back("dropped operation '" + operation_names[i] +
                          "': it uses no resource");
      dropped_.push_back(operation_names[i]);
    }
  }
  if (kept.empty() || usage.cols() == 0) {
    throw Error(ErrorCode::EmptyInstance, "instance has no operations or no resources to analyze");
  }
  usage_.resize(static_cast<Index>(kept.size()), usage.cols());
  for (std::size_t r = 0; r < kept.size(); ++r) {
    usage_.row(static_cast<Index>(r)) = usage.row(kept[r]);
    operation_names_.push_back(std::move(operation_names[kept[r]]));
  }
  resource_names_ = std::move(resource_names);
  capacity_ = std::move(capacity);
}

ResourceInstance ResourceInstance::from_matrix(const Eigen::MatrixXd& usage,
                                               const Eigen::VectorXd& capacity) {
  std::vector<std::string> ops, res;
  for (Index i = 0; i < usage.rows(); ++i) ops.push_back("op" + std::to_string(i + 1));
  for (Index j = 0; j < usage.cols(); ++j) res.push_back("r" + std::to_string(j + 1));
  return ResourceInstance(std::move(ops), std::move(res), usage, capacity);
}

ResourceInstance ResourceInstance::restrict_resources(const std::vector<Index>& columns) const {
  Eigen::MatrixXd sub(operation_count(), static_cast<Index>(columns.size()));
  Eigen::VectorXd cap(static_cast<Index>(columns.size()));
  std::vector<std::string> names;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const Index j = columns[c];
    if (j < 0 || j >= resource_count()) {
      throw Error(ErrorCode::LengthMismatch, "resource index out of range");
    }
    sub.col(static_cast<Index>(c)) = usage_.col(j);
    cap(static_cast<Index>(c)) = capacity_(j);
    names.push_back(resource_names_[j]);
  }
  return ResourceInstance(operation_names_, std::move(names), std::move(sub), std::move(cap));
}

Index ResourceInstance::operation_index(const std::string& name) const {
  for (std::size_t i = 0; i < operation_names_.size(); ++i) {
    if (operation_names_[i] == name) return static_cast<Index>(i);
  }
  return -1;
}

Index ResourceInstance::resource_index(const std::string& name) const {
  for (std::size_t j = 0; j < resource_names_.size(); ++j) {
    if (resource_names_[j] == name) return static_cast<Index>(j);
  }
  return -1;
}

NormalizedInstance::NormalizedInstance(std::vector<std::string> operation_names,
                                       std::vector<std::string> resource_names,
                                       Eigen::MatrixXd matrix)
    : operation_names_(std::move(operation_names)),
      resource_names_(std::move(resource_names)),
      matrix_(std::move(matrix)) {}

ResourceInstance NormalizedInstance::as_instance() const {
  return ResourceInstance(operation_names_, resource_names_, matrix_,
                          Eigen::VectorXd::Ones(matrix_.cols()));
}

ResourceInstance validate_instance(const RawInstance& raw, const std::vector<std::string>& exclude) {
  std::vector<std::string> all_resources;
  for (const auto& r : raw.resources) all_resources.push_back(r.name);
  check_names(all_resources, "resource");

  std::set<std::string> excluded(exclude.begin(), exclude.end());
  for (const auto& name : exclude) {
    if (std::find(all_resources.begin(), all_resources.end(), name) == all_resources.end()) {
      throw Error(ErrorCode::UnknownName, "cannot exclude unknown resource '" + name + "'");
    }
  }
  for (const auto& r : raw.resources) {
    if (!r.congesting) excluded.insert(r.name);
  }

  std::map<std::string, Index> column;
  std::vector<std::string> resource_names;
  std::vector<std::string> excluded_in_order;
  std::vector<double> capacities;
  for (const auto& r : raw.resources) {
    if (excluded.count(r.name) != 0) {
      excluded_in_order.push_back(r.name);
      continue;
    }
    column[r.name] = static_cast<Index>(resource_names.size());
    resource_names.push_back(r.name);
    capacities.push_back(r.capacity);
  }

  std::vector<std::string> operation_names;
  Eigen::MatrixXd usage =
      Eigen::MatrixXd::Zero(static_cast<Index>(raw.operations.size()),
                            static_cast<Index>(resource_names.size()));
  for (std::size_t i = 0; i < raw.operations.size(); ++i) {
    const auto& op = raw.operations[i];
    operation_names.push_back(op.name);
    std::set<std::string> listed;
    for (const auto& [res, amount] : op.usage) {
      if (!listed.insert(res).second) {
        throw Error(ErrorCode::DuplicateName,
                    "operation '" + op.name + "' lists resource '" + res + "' twice");
      }
      if (std::find(all_resources.begin(), all_resources.end(), res) == all_resources.end()) {
        throw Error(ErrorCode::UnknownName,
                    "operation '" + op.name + "' uses unknown resource '" + res + "'");
      }
      if (!std::isfinite(amount) || amount < 0.0) {
        throw Error(ErrorCode::NegativeUsage, "operation '" + op.name + "', resource '" + res +
                                                  "': usage must be a nonnegative number");
      }
      auto it = column.find(res);
      if (it != column.end()) usage(static_cast<Index>(i), it->second) = amount;
    }
  }

  Eigen::VectorXd cap = Eigen::Map<Eigen::VectorXd>(capacities.data(),
                                                    static_cast<Index>(capacities.size()));
  ResourceInstance instance(std::move(operation_names), std::move(resource_names),
                            std::move(usage), std::move(cap));
  for (const auto& name : excluded_in_order) {
    instance.warnings_.push_back("resource '" + name + "' is non-congesting: excluded and unpriced");
  }
  instance.excluded_ = std::move(excluded_in_order);
  for (const auto& note : raw.notes) instance.warnings_.push_back("note: " + note);
  return instance;
}

NormalizedInstance normalize(const ResourceInstance& instance) {
  Eigen::MatrixXd w = instance.usage().array().rowwise() / instance.capacity().transpose().array();
  return NormalizedInstance(instance.operation_names(), instance.resource_names(), std::move(w));
}

NormalizedInstance normalize(const NormalizedInstance& instance) { return instance; }

GasMeasure minimal_gas_measure(const ResourceInstance& instance) {
  const Eigen::MatrixXd w = normalize(instance).matrix();
  return GasMeasure{w.rowwise().maxCoeff()};
}

std::vector<Index> binding_resources(const ResourceInstance& instance) {
  const Eigen::MatrixXd w = normalize(instance).matrix();
  std::vector<Index> out(static_cast<std::size_t>(w.rows()));
  for (Index i = 0; i < w.rows(); ++i) w.row(i).maxCoeff(&out[static_cast<std::size_t>(i)]);
  return out;
}

bool represents(const GasMeasure& g, const ResourceInstance& instance) {
  if (g.size() != instance.operation_count()) {
    throw Error(ErrorCode::LengthMismatch, "gas measure length does not match operation count");
  }
  const Eigen::VectorXd minimal = minimal_gas_measure(instance).costs;
  return (g.costs.array() >= minimal.array() * (1.0 - 1e-12)).all();
}

bool is_feasible(const ResourceInstance& instance, const BlockVector& x) {
  if (x.size() != instance.operation_count()) {
    throw Error(ErrorCode::LengthMismatch, "block length does not match operation count");
  }
  const Eigen::VectorXd used = instance.usage().transpose() * x.counts;
  return (used.array() <= instance.capacity().array() * (1.0 + kFeasibilityTolerance)).all();
}

double gas_of(const GasMeasure& g, const BlockVector& x) {
  if (g.size() != x.size()) {
    throw Error(ErrorCode::LengthMismatch, "gas measure and block lengths differ");
  }
  return g.costs.dot(x.counts);
}

SizeReport max_block_size(const ResourceInstance& instance) {
  LinearProgram<double> lp;
  lp.direction = Direction::Maximize;
  lp.objective = Eigen::VectorXd::Ones(instance.operation_count());
  lp.constraints = normalize(instance).matrix().transpose();
  lp.bounds = Eigen::VectorXd::Ones(instance.resource_count());
  const LpResult<double> res = solve_lp(lp);
  if (!res.optimal()) {
    throw Error(ErrorCode::NumericalFailure, "block size LP did not reach an optimum");
  }
  return SizeReport{res.objective_value, BlockVector{res.primal}};
}

}  // namespace gasloss
