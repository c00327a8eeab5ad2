#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "cfrs/decision_system.hpp"

namespace cfrs {

/// The file could not be read or holds no data rows.
class IngestionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A named column is missing from the header.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A conditional cell is not a finite number. Rows count from 1 at the first
/// data row; columns are header names.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t row, std::string column, const std::string& message);
  std::size_t row() const { return row_; }
  const std::string& column() const { return column_; }

 private:
  std::size_t row_;
  std::string column_;
};

/// Reads a headed, comma-separated file. Every column except the decision
/// column is a numeric conditional attribute; column order is preserved. An
/// empty decision column name selects the last column.
DecisionSystem ingest_csv(const std::string& path, const std::string& decision_column = "");
DecisionSystem parse_csv(std::istream& in, const std::string& decision_column = "");

}  // namespace cfrs
