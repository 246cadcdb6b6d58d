#include "znls/report.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "znls/errors.hpp"

namespace znls {

std::string format_real17(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void CsvTable::add_row(std::vector<CsvValue> row) {
  if (row.size() != header_.size()) {
    throw PreconditionError("CsvTable: row width does not match header");
  }
  rows_.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out.push_back(',');
    out += header_[i];
  }
  out.push_back('\n');
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      if (const auto* p = std::get_if<long long>(&row[i])) {
        out += std::to_string(*p);
      } else if (const auto* d = std::get_if<double>(&row[i])) {
        out += format_real17(*d);
      } else {
        out += std::get<std::string>(row[i]);
      }
    }
    out.push_back('\n');
  }
  return out;
}

void write_csv(const CsvTable& table, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (f == nullptr) {
    throw std::runtime_error("write_csv: cannot open '" + path + "': " + std::strerror(errno));
  }
  std::string body = table.to_string();
  std::size_t n = std::fwrite(body.data(), 1, body.size(), f);
  int rc = std::fclose(f);
  if (n != body.size() || rc != 0) {
    throw std::runtime_error("write_csv: short write to '" + path + "'");
  }
}

}  // namespace znls
