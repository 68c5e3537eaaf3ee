#pragma once

#include <cstdint>
#include <fstream>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace heatpath {

/// Minimal RFC-4180-ish CSV reader: quoted fields, header row, per-line
/// diagnostics. Good enough for GTFS and the pipeline's table files.
class CsvReader {
 public:
  CsvReader(std::string path_label, std::istream& in);

  /// Column index or -1.
  int column(const std::string& name) const;
  /// Column index; throws InputError naming the file when absent.
  int require(const std::string& name) const;

  /// Reads the next record. Returns false at EOF. Blank lines are skipped.
  bool next();

  const std::string& field(int col) const;
  const std::string& field_or(int col, const std::string& fallback) const;
  double number(int col) const;  // throws with file:line context
  const std::vector<std::string>& fields() const { return row_; }
  int line() const { return line_; }
  std::string where() const;
  std::size_t width() const { return header_.size(); }

 private:
  bool read_record(std::vector<std::string>& out);

  std::string label_;
  std::istream& in_;
  std::vector<std::string> header_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::string> row_;
  int line_ = 0;
};

/// Opens the file and constructs a reader over it.
class CsvFile {
 public:
  explicit CsvFile(const std::string& path);
  CsvReader& reader() { return *reader_; }

 private:
  std::ifstream stream_;
  std::unique_ptr<CsvReader> reader_;
};

/// Formats a double with fixed 6 decimals (the pipeline's reproducible
/// emission format).
std::string format_fixed(double v, int decimals = 6);

/// Quotes a CSV field if it contains separators/quotes.
std::string csv_escape(const std::string& s);

/// FNV-1a over a file's bytes, hex-encoded; used for run-manifest hashes.
std::string file_content_hash(const std::string& path);
std::string string_hash(const std::string& content);

}  // namespace heatpath
