#include "gasloss/generators.hpp"

#include <random>

#include "gasloss/error.hpp"

namespace gasloss {

RawInstance random_instance(int operations, int resources, double density, std::uint64_t seed) {
  if (operations < 1 || resources < 1) {
    throw Error(ErrorCode::EmptyInstance, "random instance needs at least one operation and resource");
  }
  if (!(density > 0.0) || density > 1.0) {
    throw Error(ErrorCode::ParseError, "density must lie in (0, 1]");
  }
  std::mt19937_64 rng(seed);
  RawInstance raw;
  for (int j = 0; j < resources; ++j) {
    raw.resources.push_back({"r" + std::to_string(j + 1), static_cast<double>(1 + rng() % 10), true});
  }
  for (int i = 0; i < operations; ++i) {
    RawOperation op;
    op.name = "op" + std::to_string(i + 1);
    while (op.usage.empty()) {
      for (int j = 0; j < resources; ++j) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const auto value = static_cast<double>(1 + rng() % 10);
        if (u < density) op.usage.emplace_back(raw.resources[static_cast<std::size_t>(j)].name, value);
      }
    }
    raw.operations.push_back(std::move(op));
  }
  return raw;
}

std::vector<std::string> preset_names() { return {"table1", "table3", "figure1"}; }

RawInstance preset_instance(const std::string& name) {
  RawInstance raw;
  if (name == "table1") {
    raw.resources = {{"r1", 15.0, true}, {"r2", 3.0, true}};
    raw.operations = {{"Op1", {{"r1", 2.0}, {"r2", 1.0}}},
                      {"Op2", {{"r1", 6.0}, {"r2", 2.0}}},
                      {"Op3", {{"r1", 9.0}, {"r2", 1.0}}},
                      {"Op4", {{"r1", 10.0}, {"r2", 1.0}}}};
  } else if (name == "table3") {
    raw.resources = {{"r1", 1.0, true}, {"r2", 1.0, true}};
    raw.operations = {{"Op1", {{"r1", 0.0}, {"r2", 1.0}}},
                      {"Op2", {{"r1", 1.0}, {"r2", 1.0}}},
                      {"Op3", {{"r1", 1.0}, {"r2", 0.0}}}};
    raw.notes = {
        "with operation frequencies (0.05, 0.80, 0.15) the resource payoffs are 0.95 (r1) and "
        "0.85 (r2); the best reply is the larger payoff 0.95, so alpha_hist = 20/19; the "
        "figure 20/17 results from taking 0.85 as the best reply and is not correct"};
  } else if (name == "figure1") {
    raw.resources = {{"gas", 30.0, true}, {"blobs", 6.0, true}};
    raw.operations = {{"gas_unit", {{"gas", 1.0}}}, {"blob_unit", {{"blobs", 1.0}}}};
    raw.notes = {
        "the familiar two-resource gas/blob sketch has inconsistent limits (gas <= 36 vs "
        "gas <= 30; single constraint x + 6y <= 30 vs x + 5y <= 30); this preset uses "
        "gas <= 30 and blobs <= 6 with one unit operation per resource"};
  } else {
    throw Error(ErrorCode::UnknownName, "unknown preset '" + name + "'");
  }
  return raw;
}

}  // namespace gasloss
