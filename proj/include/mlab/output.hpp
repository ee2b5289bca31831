#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

namespace mlab {

using Json = nlohmann::ordered_json;

/// Scientific notation with 17 significant digits ("%.16e"); round-trips.
std::string format_double(double v);

/// CSV table: one header row, then rows of already-formatted cells.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct ParsedCsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Splits on commas and newlines; lines starting with '#' are skipped.
ParsedCsv parse_csv(const std::string& text);

/// JSON text with every floating-point number printed by format_double;
/// non-finite numbers become null. Key order is preserved.
std::string dump_json(const Json& j, int indent = 2);

}  // namespace mlab
