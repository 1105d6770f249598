#include "plurikp/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "plurikp/errors.hpp"

namespace plurikp {

using nlohmann::json;

namespace {

std::string point_key(const Point& p) {
  std::string out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(p[k]);
  }
  return out;
}

Point parse_key(const std::string& key) {
  std::vector<int> coords;
  std::stringstream in(key);
  std::string part;
  while (std::getline(in, part, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw FormatError("bad coordinate '" + part + "' in point key '" + key + "'");
    }
    if (used != part.size()) throw FormatError("bad coordinate '" + part + "' in point key '" + key + "'");
    coords.push_back(v);
  }
  if (coords.empty()) throw FormatError("empty point key");
  return Point(std::move(coords));
}

Lattice parse_lattice(const std::string& name) {
  if (name == "qan") return Lattice::RootA;
  if (name == "cubic") return Lattice::Cubic;
  throw FormatError("unknown lattice '" + name + "'");
}

}  // namespace

std::string field_to_json(const Field& field) {
  json values = json::object();
  for (const auto& [p, v] : field.values()) values[point_key(p)] = v;
  json doc = {{"format_version", kFormatVersion},
              {"lattice", lattice_name(field.lattice())},
              {"dimension", field.dimension()},
              {"values", values}};
  return doc.dump(2) + "\n";
}

Field field_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("field file is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("format_version").get<int>() != kFormatVersion)
      throw FormatError("unsupported field format_version");
    const Lattice lattice = parse_lattice(doc.at("lattice").get<std::string>());
    const int n = doc.at("dimension").get<int>();
    if (n < 1) throw FormatError("field dimension must be positive");
    const std::size_t coords = static_cast<std::size_t>(lattice == Lattice::RootA ? n + 1 : n);
    Field field(lattice, coords);
    for (const auto& [key, value] : doc.at("values").items()) {
      if (!value.is_number()) throw FormatError("value at '" + key + "' is not a number");
      const Point p = parse_key(key);
      try {
        field.set(p, value.get<double>());
      } catch (const InvalidArgument& e) {
        throw FormatError(e.what());
      }
    }
    return field;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed field file: ") + e.what());
  }
}

Field read_field(const std::string& path) { return field_from_json(read_text(path)); }

void write_field(const std::string& path, const Field& field) { write_text_atomic(path, field_to_json(field)); }

Chain parse_chain(const std::string& text) {
  Chain out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string body = line.substr(first, last - first + 1);
    const auto space = body.find(' ');
    if (space == std::string::npos) throw FormatError("chain line " + std::to_string(number) + ": expected '<coef> <cell>'");
    long coef = 0;
    std::size_t used = 0;
    try {
      coef = std::stol(body.substr(0, space), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != space) throw FormatError("chain line " + std::to_string(number) + ": bad coefficient");
    const auto cell_start = body.find_first_not_of(' ', space);
    out.add(OrientedCell::parse(body.substr(cell_start)), coef);
  }
  return out;
}

Chain read_chain(const std::string& path) { return parse_chain(read_text(path)); }

std::string report_to_json(const SuiteResult& result, const SuiteConfig& config) {
  json records = json::array();
  for (const auto& r : result.records) {
    records.push_back({{"check", r.id},
                       {"params", r.params},
                       {"observed", r.observed},
                       {"expected", r.expected},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass},
                       {"seed", r.seed},
                       {"trials", r.trials},
                       {"failures", r.failures}});
  }
  json tolerances = json::object();
  for (const auto& [k, v] : config.tolerances) tolerances[k] = v;
  json max_residuals = json::object();
  for (const auto& [k, v] : result.summary.max_residuals) max_residuals[k] = v;
  json data = json::object();
  for (const auto& [k, v] : result.summary.data) data[k] = v;
  json summary = {{"checks", result.summary.checks},
                  {"passed", result.summary.passed},
                  {"failed", result.summary.failed},
                  {"max_residuals", max_residuals},
                  {"data", data},
                  {"config",
                   {{"lattice", lattice_name(config.lattice)},
                    {"dimension", config.dimension},
                    {"trials", config.trials},
                    {"seed", config.seed},
                    {"tolerances", tolerances}}}};
  json doc = {{"format_version", kFormatVersion}, {"records", records}, {"summary", summary}};
  return doc.dump(2) + "\n";
}

void write_report(const std::string& path, const SuiteResult& result, const SuiteConfig& config) {
  write_text_atomic(path, report_to_json(result, config));
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return buf.str();
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("error writing '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path + "'");
  }
}

}  // namespace plurikp
