#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gasloss/model.hpp"

namespace gasloss {

/// Seeded random instance. The stream is std::mt19937_64(seed), consumed in
/// this order: one draw per capacity (1 + draw % 10), then per operation and
/// resource two draws: the entry is nonzero when (draw1 >> 11) * 2^-53 <
/// density, with value 1 + draw2 % 10. All-zero rows are redrawn.
RawInstance random_instance(int operations, int resources, double density, std::uint64_t seed);

/// Bundled presets: "table1", "table3", "figure1".
RawInstance preset_instance(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace gasloss
