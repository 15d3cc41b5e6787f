#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "wdrjcc/data_io.hpp"
#include "wdrjcc/error.hpp"

namespace wdrjcc {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return v;
}

struct Line {
  std::size_t number;
  std::vector<std::string_view> cells;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++number;
    if (trim(line).empty()) continue;
    Line l{number, {}};
    while (true) {
      const std::size_t comma = line.find(',');
      l.cells.push_back(trim(line.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    out.push_back(std::move(l));
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::vector<double>> numeric_rows(std::string_view text,
                                              std::vector<std::string>* header,
                                              bool allow_empty) {
  std::vector<Line> lines = split_lines(text);
  if (lines.empty()) {
    if (allow_empty) return {};
    throw ParseError("empty scenario file");
  }
  std::size_t start = 0;
  bool has_header = false;
  for (std::string_view c : lines.front().cells)
    if (!parse_number(c)) has_header = true;
  if (has_header) {
    if (header)
      for (std::string_view c : lines.front().cells) header->emplace_back(c);
    start = 1;
  }
  std::vector<std::vector<double>> rows;
  const std::size_t width = lines.front().cells.size();
  for (std::size_t r = start; r < lines.size(); ++r) {
    const Line& l = lines[r];
    if (l.cells.size() != width)
      throw ParseError("line " + std::to_string(l.number) + ": expected " +
                       std::to_string(width) + " cells, found " + std::to_string(l.cells.size()));
    std::vector<double> row;
    for (std::size_t c = 0; c < l.cells.size(); ++c) {
      const std::optional<double> v = parse_number(l.cells[c]);
      if (!v)
        throw ParseError("line " + std::to_string(l.number) + ", column " +
                         std::to_string(c + 1) + ": '" + std::string(l.cells[c]) +
                         "' is not a number");
      if (!std::isfinite(*v))
        throw ParseError("line " + std::to_string(l.number) + ", column " +
                         std::to_string(c + 1) + ": value is not finite");
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() && !allow_empty) throw ParseError("scenario file has no data rows");
  return rows;
}

}  // namespace

ScenarioFormat parse_format(std::string_view text) {
  if (text == "csv") return ScenarioFormat::kCsv;
  if (text == "json") return ScenarioFormat::kJson;
  throw ParseError("unknown scenario format '" + std::string(text) + "'");
}

ScenarioFormat format_for(const std::filesystem::path& path) {
  return path.extension() == ".json" ? ScenarioFormat::kJson : ScenarioFormat::kCsv;
}

Matrix parse_scenarios_csv(std::string_view text, std::vector<std::string>* header) {
  return Matrix::from_rows(numeric_rows(text, header, false));
}

Matrix parse_scenarios_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scenario JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array())
    throw ParseError("scenario JSON needs a \"rows\" array");
  const auto& rows = doc["rows"];
  if (rows.empty()) throw ParseError("scenario JSON has no rows");
  Matrix m;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array()) throw ParseError("row " + std::to_string(i) + " is not an array");
    std::vector<double> row;
    for (const auto& v : rows[i]) {
      if (!v.is_number()) throw ParseError("row " + std::to_string(i) + " has a non-numeric entry");
      row.push_back(v.get<double>());
    }
    if (i > 0 && row.size() != m.cols())
      throw ParseError("row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(m.cols()));
    m.append_row(row);
  }
  if (doc.contains("k") && doc["k"].get<std::size_t>() != m.cols())
    throw ParseError("\"k\" does not match the row width");
  if (doc.contains("n") && doc["n"].get<std::size_t>() != m.rows())
    throw ParseError("\"n\" does not match the number of rows");
  return m;
}

std::string format_scenarios_csv(const Matrix& m, const std::vector<std::string>& header) {
  std::string out;
  for (std::size_t j = 0; j < header.size(); ++j) out += (j ? "," : "") + header[j];
  if (!header.empty()) out += '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += fmt(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string format_scenarios_json(const Matrix& m) {
  nlohmann::json doc;
  doc["k"] = m.cols();
  doc["n"] = m.rows();
  doc["rows"] = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    doc["rows"].push_back(std::vector<double>(r.begin(), r.end()));
  }
  return doc.dump() + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

ScenarioSet load_scenarios(const std::filesystem::path& path, ScenarioFormat format) {
  const std::string text = read_file(path);
  try {
    Matrix m = format == ScenarioFormat::kJson ? parse_scenarios_json(text)
                                               : parse_scenarios_csv(text);
    return ScenarioSet(std::move(m));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

ScenarioSet load_scenarios(const std::filesystem::path& path) {
  return load_scenarios(path, format_for(path));
}

void save_scenarios(const std::filesystem::path& path, const Matrix& samples,
                    ScenarioFormat format) {
  write_file(path, format == ScenarioFormat::kJson ? format_scenarios_json(samples)
                                                   : format_scenarios_csv(samples));
}

std::vector<std::vector<double>> load_points(const std::filesystem::path& path) {
  try {
    return numeric_rows(read_file(path), nullptr, true);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

CsvTable parse_csv_table(std::string_view text) {
  CsvTable t;
  std::vector<Line> lines = split_lines(text);
  for (std::size_t r = 0; r < lines.size(); ++r) {
    std::vector<std::string> cells(lines[r].cells.begin(), lines[r].cells.end());
    if (r == 0)
      t.header = std::move(cells);
    else
      t.rows.push_back(std::move(cells));
  }
  return t;
}

}  // namespace wdrjcc
