#include "heatpath/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <memory>

#include "heatpath/errors.hpp"

namespace heatpath {

CsvReader::CsvReader(std::string path_label, std::istream& in)
    : label_(std::move(path_label)), in_(in) {
  if (!read_record(header_))
    throw InputError(label_, "empty file (no header row)");
  // Strip a UTF-8 BOM if present.
  if (!header_.empty() && header_[0].size() >= 3 &&
      header_[0].compare(0, 3, "\xEF\xBB\xBF") == 0)
    header_[0].erase(0, 3);
  for (std::size_t i = 0; i < header_.size(); ++i) {
    // Trim stray whitespace/CR around header names.
    std::string h = header_[i];
    while (!h.empty() && (h.back() == ' ' || h.back() == '\r')) h.pop_back();
    while (!h.empty() && h.front() == ' ') h.erase(h.begin());
    index_.emplace(h, static_cast<int>(i));
  }
}

int CsvReader::column(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int CsvReader::require(const std::string& name) const {
  int c = column(name);
  if (c < 0) throw InputError(label_, "missing required column '" + name + "'");
  return c;
}

bool CsvReader::next() {
  while (read_record(row_)) {
    if (row_.size() == 1 && row_[0].empty()) continue;  // blank line
    return true;
  }
  return false;
}

bool CsvReader::read_record(std::vector<std::string>& out) {
  out.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  int ch;
  while ((ch = in_.get()) != EOF) {
    any = true;
    char c = static_cast<char>(ch);
    if (in_quotes) {
      if (c == '"') {
        if (in_.peek() == '"') {
          field.push_back('"');
          in_.get();
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      ++line_;
      if (!field.empty() && field.back() == '\r') field.pop_back();
      out.push_back(std::move(field));
      return true;
    } else {
      field.push_back(c);
    }
  }
  if (!any) return false;
  ++line_;
  if (!field.empty() && field.back() == '\r') field.pop_back();
  out.push_back(std::move(field));
  return true;
}

const std::string& CsvReader::field(int col) const {
  if (col < 0 || static_cast<std::size_t>(col) >= row_.size())
    throw InputError(where(), "record has too few fields");
  return row_[static_cast<std::size_t>(col)];
}

const std::string& CsvReader::field_or(int col,
                                       const std::string& fallback) const {
  if (col < 0 || static_cast<std::size_t>(col) >= row_.size()) return fallback;
  return row_[static_cast<std::size_t>(col)];
}

double CsvReader::number(int col) const {
  const std::string& s = field(col);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw InputError(where(), "expected a number, got '" + s + "'");
  return v;
}

std::string CsvReader::where() const {
  return label_ + ":" + std::to_string(line_);
}

CsvFile::CsvFile(const std::string& path) : stream_(path) {
  if (!stream_) throw InputError(path, "cannot open file");
  reader_ = std::make_unique<CsvReader>(path, stream_);
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  // Avoid the "-0.000000" artifact so reruns are byte-stable across
  // summation orders that only differ in signed zero.
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-')
    s.erase(0, 1);
  return s;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

std::string string_hash(const std::string& content) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : content) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string file_content_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot open file for hashing");
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return string_hash(content);
}

}  // namespace heatpath
