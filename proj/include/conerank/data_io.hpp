#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conerank/alternatives.hpp"

namespace conerank {

struct DatasetSchema {
  std::string label_column;
  std::vector<std::string> attribute_columns;
  /// Optional published composite score, carried along for cross-checks.
  std::optional<std::string> score_column;

  void validate() const;
};

struct LoadedDataset {
  AlternativeSet alternatives;
  /// One message per dropped row, "row N: ...", N being the physical line.
  std::vector<std::string> warnings;
  /// Parallel to `alternatives` when the schema names a score column.
  std::optional<std::vector<std::optional<double>>> scores;
  std::size_t data_rows;
  std::size_t dropped_rows;
};

/// RFC 4180 CSV with a header row. Lines starting with '#' outside quoted
/// fields are comments. Rows with missing or unparseable attribute cells are
/// dropped with a warning; duplicate labels, missing schema columns and a
/// dataset with no valid rows are errors (DomainError).
LoadedDataset parse_csv(std::string_view text, const DatasetSchema& schema);

/// Column names of the header row (trimmed).
std::vector<std::string> csv_header(std::string_view text);

/// Whole file as bytes; throws IoError when it cannot be read.
std::string read_file(const std::filesystem::path& path);

/// Throws IoError when the file cannot be read.
LoadedDataset load_csv(const std::filesystem::path& path, const DatasetSchema& schema);

/// Header plus one row per alternative; numbers in shortest round-trip form.
std::string write_csv(const AlternativeSet& Z, const DatasetSchema& schema);

/// Parses one decimal number; rejects thousands separators, inf and nan.
std::optional<double> parse_decimal(std::string_view text);

/// Shortest decimal representation that reads back to the same double.
std::string format_decimal(double value);

/// Column mapping of the bundled EPI sample: country, PCC, HLT, ECO.
DatasetSchema epi_schema();

/// Raw text of the bundled 20-country EPI sample (provenance in its header).
std::string_view fixture_epi_csv();

AlternativeSet fixture_epi_sample();

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomically(const std::filesystem::path& path, std::string_view contents);

}  // namespace conerank
