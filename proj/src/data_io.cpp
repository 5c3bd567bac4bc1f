#include "conerank/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "conerank/error.hpp"
#include "epi_fixture.hpp"

namespace conerank {

namespace {

struct Record {
  std::size_t line;
  std::vector<std::string> fields;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

/// Splits RFC 4180 text into records. '#' at the start of a line begins a
/// comment; blank lines are skipped.
std::vector<Record> split_records(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<Record> records;
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (text[i] == '#') {
      while (i < n && text[i] != '\n') ++i;
      ++i;
      ++line;
      continue;
    }
    if (text[i] == '\n' || (text[i] == '\r' && i + 1 < n && text[i + 1] == '\n')) {
      i += text[i] == '\r' ? 2 : 1;
      ++line;
      continue;
    }

    Record rec{line, {}};
    std::string field;
    bool quoted = false;
    bool field_was_quoted = false;
    for (;;) {
      if (i >= n) {
        if (quoted) {
          throw DomainError("row " + std::to_string(rec.line) + ": unterminated quoted field");
        }
        rec.fields.push_back(std::move(field));
        break;
      }
      const char c = text[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < n && text[i + 1] == '"') {
            field += '"';
            i += 2;
          } else {
            quoted = false;
            ++i;
          }
        } else {
          if (c == '\n') ++line;
          field += c;
          ++i;
        }
        continue;
      }
      if (c == '"' && !field_was_quoted && trim(field).empty()) {
        field.clear();
        quoted = true;
        field_was_quoted = true;
        ++i;
      } else if (c == ',') {
        rec.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
        ++i;
      } else if (c == '\n' || (c == '\r' && i + 1 < n && text[i + 1] == '\n')) {
        i += c == '\r' ? 2 : 1;
        ++line;
        rec.fields.push_back(std::move(field));
        break;
      } else {
        field += c;
        ++i;
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

bool needs_quoting(const std::string& s) {
  return s.find_first_of(",\"\r\n") != std::string::npos || (!s.empty() && s.front() == '#') ||
         trim(s).size() != s.size();
}

std::string quote(const std::string& s) {
  if (!needs_quoting(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void DatasetSchema::validate() const {
  if (label_column.empty()) throw DomainError("schema: empty label column name");
  if (attribute_columns.empty()) throw DomainError("schema: no attribute columns");
  std::unordered_set<std::string> seen{label_column};
  for (const auto& c : attribute_columns) {
    if (!seen.insert(c).second) {
      throw DomainError("schema: column '" + c + "' listed twice or equal to the label column");
    }
  }
  if (score_column && seen.count(*score_column)) {
    throw DomainError("schema: score column overlaps other columns");
  }
}

std::optional<double> parse_decimal(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value, std::chars_format::general);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::string format_decimal(double value) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

LoadedDataset parse_csv(std::string_view text, const DatasetSchema& schema) {
  schema.validate();
  const std::vector<Record> records = split_records(text);
  if (records.empty()) throw DomainError("CSV has no header row");

  std::unordered_map<std::string, std::size_t> column;
  const auto& header = records.front().fields;
  for (std::size_t i = 0; i < header.size(); ++i) column.emplace(std::string(trim(header[i])), i);
  auto locate = [&](const std::string& name) {
    auto it = column.find(name);
    if (it == column.end()) throw DomainError("CSV is missing column '" + name + "'");
    return it->second;
  };
  const std::size_t label_idx = locate(schema.label_column);
  std::vector<std::size_t> attr_idx;
  for (const auto& c : schema.attribute_columns) attr_idx.push_back(locate(c));
  std::optional<std::size_t> score_idx;
  if (schema.score_column) score_idx = locate(*schema.score_column);

  std::vector<std::string> labels;
  std::vector<double> values;
  std::vector<std::optional<double>> scores;
  std::vector<std::string> warnings;
  std::unordered_map<std::string, std::size_t> label_line;

  const std::size_t k = attr_idx.size();
  for (std::size_t r = 1; r < records.size(); ++r) {
    const Record& rec = records[r];
    const std::string row = "row " + std::to_string(rec.line) + ": ";
    auto cell = [&](std::size_t idx) -> std::string_view {
      return idx < rec.fields.size() ? trim(rec.fields[idx]) : std::string_view{};
    };

    const std::string label(cell(label_idx));
    if (label.empty()) {
      warnings.push_back(row + "missing " + schema.label_column);
      continue;
    }
    std::vector<double> row_values;
    std::string problem;
    for (std::size_t a = 0; a < k && problem.empty(); ++a) {
      const std::string_view raw = cell(attr_idx[a]);
      if (raw.empty()) {
        problem = "missing " + schema.attribute_columns[a];
      } else if (auto v = parse_decimal(raw)) {
        row_values.push_back(*v);
      } else {
        problem = "unparseable " + schema.attribute_columns[a] + " value '" + std::string(raw) + "'";
      }
    }
    if (!problem.empty()) {
      warnings.push_back(row + problem);
      continue;
    }

    if (auto [it, fresh] = label_line.emplace(label, rec.line); !fresh) {
      throw DomainError("duplicate label '" + label + "' on rows " + std::to_string(it->second) +
                        " and " + std::to_string(rec.line));
    }
    labels.push_back(label);
    values.insert(values.end(), row_values.begin(), row_values.end());
    if (score_idx) scores.push_back(parse_decimal(cell(*score_idx)));
  }

  const std::size_t data_rows = records.size() - 1;
  if (labels.empty()) throw DomainError("CSV has no valid data rows");

  Eigen::MatrixXd matrix(static_cast<Eigen::Index>(labels.size()), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) = values[i * k + a];
    }
  }
  LoadedDataset out{AlternativeSet(std::move(labels), std::move(matrix)), std::move(warnings),
                    std::nullopt, data_rows, 0};
  out.dropped_rows = out.warnings.size();
  if (score_idx) out.scores = std::move(scores);
  return out;
}

std::vector<std::string> csv_header(std::string_view text) {
  const std::vector<Record> records = split_records(text);
  if (records.empty()) throw DomainError("CSV has no header row");
  std::vector<std::string> out;
  for (const auto& f : records.front().fields) out.emplace_back(trim(f));
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return buffer.str();
}

LoadedDataset load_csv(const std::filesystem::path& path, const DatasetSchema& schema) {
  return parse_csv(read_file(path), schema);
}

std::string write_csv(const AlternativeSet& Z, const DatasetSchema& schema) {
  if (static_cast<int>(schema.attribute_columns.size()) != Z.k()) {
    throw DimensionError("schema lists " + std::to_string(schema.attribute_columns.size()) +
                         " attribute columns, set has k = " + std::to_string(Z.k()));
  }
  std::ostringstream os;
  os << quote(schema.label_column);
  for (const auto& c : schema.attribute_columns) os << ',' << quote(c);
  os << '\n';
  for (std::size_t i = 0; i < Z.size(); ++i) {
    os << quote(Z.label(i));
    for (Eigen::Index a = 0; a < Z.k(); ++a) {
      os << ',' << format_decimal(Z.values()(static_cast<Eigen::Index>(i), a));
    }
    os << '\n';
  }
  return os.str();
}

DatasetSchema epi_schema() { return {"country", {"PCC", "HLT", "ECO"}, std::nullopt}; }

std::string_view fixture_epi_csv() { return kEpiFixtureCsv; }

AlternativeSet fixture_epi_sample() { return parse_csv(fixture_epi_csv(), epi_schema()).alternatives; }

void write_file_atomically(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("error writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place: " + path.string());
  }
}

}  // namespace conerank
