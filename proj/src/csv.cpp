#include "cfrs/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <vector>

namespace cfrs {

ParseError::ParseError(std::size_t row, std::string column, const std::string& message)
    : std::runtime_error("row " + std::to_string(row) + ", column '" + column + "': " + message),
      row_(row),
      column_(std::move(column)) {}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(trim(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(trim(cell));
  return cells;
}

bool parse_number(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

DecisionSystem parse_csv(std::istream& in, const std::string& decision_column) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) {
      header = split_line(line);
      break;
    }
  }
  if (header.empty()) throw IngestionError("file is empty");
  if (header.size() < 2) throw IngestionError("need at least one conditional attribute and a decision column");

  std::size_t decision = header.size() - 1;
  if (!decision_column.empty()) {
    auto it = std::find(header.begin(), header.end(), decision_column);
    if (it == header.end()) throw ConfigError("decision column '" + decision_column + "' not found in header");
    decision = static_cast<std::size_t>(it - header.begin());
  }

  std::vector<std::string> attributes;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != decision) attributes.push_back(header[c]);
  }

  std::vector<double> values;
  std::vector<std::string> labels;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    const auto cells = split_line(line);
    if (cells.size() != header.size()) {
      throw ParseError(row, header[std::min(cells.size(), header.size() - 1)],
                       "expected " + std::to_string(header.size()) + " cells, found " + std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == decision) continue;
      double v = 0.0;
      if (!parse_number(cells[c], v)) throw ParseError(row, header[c], "'" + cells[c] + "' is not a finite number");
      values.push_back(v);
    }
    if (cells[decision].empty()) throw ParseError(row, header[decision], "empty decision value");
    labels.push_back(cells[decision]);
  }
  if (labels.empty()) throw IngestionError("file has a header but no data rows");
  return DecisionSystem(std::move(attributes), header[decision], std::move(values), std::move(labels));
}

DecisionSystem ingest_csv(const std::string& path, const std::string& decision_column) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open '" + path + "'");
  try {
    return parse_csv(in, decision_column);
  } catch (const IngestionError& e) {
    throw IngestionError(path + ": " + e.what());
  }
}

}  // namespace cfrs
