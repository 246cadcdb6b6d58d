#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace znls {

// CSV cell: integers verbatim, reals with 17 significant digits (locale-free),
// text as-is.
using CsvValue = std::variant<long long, double, std::string>;

std::string format_real17(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<CsvValue> row);
  std::string to_string() const;  // '\n' endings, trailing newline

  std::size_t row_count() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<CsvValue>> rows_;
};

void write_csv(const CsvTable& table, const std::string& path);

}  // namespace znls
