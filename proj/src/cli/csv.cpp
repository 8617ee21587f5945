#include "csv.hpp"

#include <charconv>
#include <cstdio>

#include "swanson/cli.hpp"
#include "swanson/error.hpp"

namespace swanson::cli {

std::string format_number(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  if (ec != std::errc()) return "nan";
  return std::string(buf, p);
}

CsvFile::CsvFile(std::string path) : path_(std::move(path)), tmp_(path_ + ".tmp") {
  os_.open(tmp_, std::ios::binary | std::ios::trunc);
  if (!os_) throw UsageError("cannot open " + tmp_ + " for writing");
}

CsvFile::~CsvFile() {
  if (!committed_) {
    os_.close();
    std::remove(tmp_.c_str());
  }
}

void CsvFile::comment(const std::string& line) { os_ << "# " << line << '\n'; }

void CsvFile::header(const std::vector<std::string>& names) {
  columns_ = names.size();
  for (std::size_t k = 0; k < names.size(); ++k) os_ << (k ? "," : "") << names[k];
  os_ << '\n';
}

void CsvFile::row(std::span<const double> values) {
  if (values.size() != columns_)
    throw Error(ErrorKind::InvalidArgument, "csv row width does not match header");
  for (std::size_t k = 0; k < values.size(); ++k) os_ << (k ? "," : "") << format_number(values[k]);
  os_ << '\n';
}

void CsvFile::commit() {
  os_.close();
  if (!os_ || std::rename(tmp_.c_str(), path_.c_str()) != 0)
    throw UsageError("cannot write " + path_);
  committed_ = true;
}

}  // namespace swanson::cli
