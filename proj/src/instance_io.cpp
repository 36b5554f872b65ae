#include "gasloss/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gasloss/error.hpp"
#include "json.hpp"

namespace gasloss {
namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& field, const std::string& message) {
  throw Error(ErrorCode::ParseError, field + ": " + message);
}

const ojson& require(const ojson& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const ojson& v, const std::string& where) {
  if (!v.is_string()) parse_fail(where, "expected a string");
  return v.get<std::string>();
}

double require_number(const ojson& v, const std::string& where) {
  if (!v.is_number()) parse_fail(where, "expected a number");
  return v.get<double>();
}

ojson number_json(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) {
    return ojson(static_cast<std::int64_t>(v));
  }
  return ojson(v);
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_cells(const std::string& line, char delim) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, delim)) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == delim) cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, const std::string& where) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || cell.empty()) {
    parse_fail(where, "'" + cell + "' is not a number");
  }
  return v;
}

}  // namespace

RawInstance parse_instance_json(const std::string& text) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail("instance", std::string("malformed JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) parse_fail("instance", "expected a JSON object");

  RawInstance raw;
  const ojson& resources = require(doc, "resources", "instance");
  if (!resources.is_array()) parse_fail("resources", "expected an array");
  for (std::size_t j = 0; j < resources.size(); ++j) {
    const std::string where = "resources[" + std::to_string(j) + "]";
    const ojson& r = resources[j];
    if (!r.is_object()) parse_fail(where, "expected an object");
    RawResource res;
    res.name = require_string(require(r, "name", where), where + ".name");
    res.capacity = require_number(require(r, "capacity", where), where + ".capacity");
    if (auto it = r.find("congesting"); it != r.end()) {
      if (!it->is_boolean()) parse_fail(where + ".congesting", "expected true or false");
      res.congesting = it->get<bool>();
    }
    raw.resources.push_back(std::move(res));
  }

  const ojson& operations = require(doc, "operations", "instance");
  if (!operations.is_array()) parse_fail("operations", "expected an array");
  for (std::size_t i = 0; i < operations.size(); ++i) {
    const std::string where = "operations[" + std::to_string(i) + "]";
    const ojson& o = operations[i];
    if (!o.is_object()) parse_fail(where, "expected an object");
    RawOperation op;
    op.name = require_string(require(o, "name", where), where + ".name");
    const ojson& usage = require(o, "usage", where);
    if (!usage.is_object()) parse_fail(where + ".usage", "expected an object");
    for (auto it = usage.begin(); it != usage.end(); ++it) {
      op.usage.emplace_back(it.key(),
                            require_number(it.value(), where + ".usage." + it.key()));
    }
    raw.operations.push_back(std::move(op));
  }

  if (auto it = doc.find("notes"); it != doc.end()) {
    if (!it->is_array()) parse_fail("notes", "expected an array of strings");
    for (std::size_t k = 0; k < it->size(); ++k) {
      raw.notes.push_back(require_string((*it)[k], "notes[" + std::to_string(k) + "]"));
    }
  }
  return raw;
}

std::string serialize_instance(const RawInstance& raw) {
  ojson doc = ojson::object();
  ojson resources = ojson::array();
  for (const auto& r : raw.resources) {
    ojson item = ojson::object();
    item["name"] = r.name;
    item["capacity"] = number_json(r.capacity);
    if (!r.congesting) item["congesting"] = false;
    resources.push_back(std::move(item));
  }
  ojson operations = ojson::array();
  for (const auto& op : raw.operations) {
    ojson item = ojson::object();
    item["name"] = op.name;
    ojson usage = ojson::object();
    for (const auto& [res, amount] : op.usage) usage[res] = number_json(amount);
    item["usage"] = std::move(usage);
    operations.push_back(std::move(item));
  }
  doc["resources"] = std::move(resources);
  doc["operations"] = std::move(operations);
  if (!raw.notes.empty()) doc["notes"] = raw.notes;
  return doc.dump(2) + "\n";
}

RawInstance parse_instance_table(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  char delim = ',';
  int line_no = 0;
  std::vector<int> row_lines;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (header.empty()) {
      delim = t.find('\t') != std::string::npos ? '\t' : ',';
      header = split_cells(t, delim);
      continue;
    }
    rows.push_back(split_cells(t, delim));
    row_lines.push_back(line_no);
  }
  if (header.size() < 2) parse_fail("table header", "expected 'operation' followed by resource names");

  RawInstance raw;
  bool have_capacity = false;
  std::vector<double> capacity(header.size() - 1, 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string where = "table line " + std::to_string(row_lines[r]);
    const auto& cells = rows[r];
    if (cells.size() != header.size()) {
      parse_fail(where, "expected " + std::to_string(header.size()) + " cells, found " +
                            std::to_string(cells.size()));
    }
    if (cells[0] == "capacity") {
      if (have_capacity) parse_fail(where, "second capacity row");
      have_capacity = true;
      for (std::size_t c = 1; c < cells.size(); ++c) {
        capacity[c - 1] = parse_cell(cells[c], where + " (" + header[c] + ")");
      }
      continue;
    }
    RawOperation op;
    op.name = cells[0];
    for (std::size_t c = 1; c < cells.size(); ++c) {
      const double v = parse_cell(cells[c], where + " (" + header[c] + ")");
      if (v != 0.0) op.usage.emplace_back(header[c], v);
    }
    raw.operations.push_back(std::move(op));
  }
  if (!have_capacity) parse_fail("table", "missing 'capacity' row");
  for (std::size_t c = 1; c < header.size(); ++c) {
    raw.resources.push_back({header[c], capacity[c - 1], true});
  }
  return raw;
}

std::string read_text_file(const std::filesystem::path& path, const std::string& what) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::ParseError, "no such " + what + " file: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + what + " file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RawInstance load_instance_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path, "instance");
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".csv" || ext == ".tsv") return parse_instance_table(text);
  return parse_instance_json(text);
}

Eigen::VectorXd parse_profile_json(const std::string& text, const ResourceInstance& instance) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail("profile", std::string("malformed JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) parse_fail("profile", "expected an object of operation weights");
  const auto& dropped = instance.dropped_operations();
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(instance.operation_count());
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const double w = require_number(it.value(), "profile." + it.key());
    if (!std::isfinite(w) || w < 0.0) parse_fail("profile." + it.key(), "weight must be nonnegative");
    const Index i = instance.operation_index(it.key());
    if (i < 0) {
      if (std::find(dropped.begin(), dropped.end(), it.key()) != dropped.end()) continue;
      throw Error(ErrorCode::UnknownName, "profile names unknown operation '" + it.key() + "'");
    }
    weights(i) = w;
  }
  return weights;
}

Eigen::VectorXd load_profile_file(const std::filesystem::path& path,
                                  const ResourceInstance& instance) {
  return parse_profile_json(read_text_file(path, "profile"), instance);
}

}  // namespace gasloss
