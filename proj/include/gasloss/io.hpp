#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <string>

#include "gasloss/model.hpp"

namespace gasloss {

/// Instance document (JSON):
///   { "resources":  [ {"name": s, "capacity": x, "congesting": b?}, ... ],
///     "operations": [ {"name": s, "usage": {resource: amount, ...}}, ... ],
///     "notes":      [ s, ... ]? }
/// Resources missing from an operation's usage map are used 0 times.
/// "congesting" defaults to true and is only written when false.
RawInstance parse_instance_json(const std::string& text);
std::string serialize_instance(const RawInstance& raw);

/// Delimited table: a header "operation,<resource>,...", one row per
/// operation, and one row labelled "capacity". Blank lines and lines starting
/// with '#' are ignored.
RawInstance parse_instance_table(const std::string& text);

/// Reads a .csv/.tsv table or a JSON document. Throws ParseError with
/// "no such instance file" when the path does not exist.
RawInstance load_instance_file(const std::filesystem::path& path);

/// Frequency file: flat JSON object operation-name -> nonnegative weight.
/// Returns weights in the instance's operation order; operations not listed
/// get 0 and names of dropped operations are ignored. Unknown names throw
/// UnknownName. Weights are not rescaled here.
Eigen::VectorXd parse_profile_json(const std::string& text, const ResourceInstance& instance);
Eigen::VectorXd load_profile_file(const std::filesystem::path& path,
                                  const ResourceInstance& instance);

std::string read_text_file(const std::filesystem::path& path, const std::string& what);

}  // namespace gasloss
