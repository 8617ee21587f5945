#pragma once

#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace swanson::cli {

// 12 significant digits, shortest general form.
std::string format_number(double v);

// Written to `<path>.tmp` and renamed on commit; an uncommitted file is removed.
class CsvFile {
 public:
  explicit CsvFile(std::string path);
  ~CsvFile();
  CsvFile(const CsvFile&) = delete;
  CsvFile& operator=(const CsvFile&) = delete;

  void comment(const std::string& line);
  void header(const std::vector<std::string>& names);
  void row(std::span<const double> values);
  void commit();
  const std::string& path() const { return path_; }

 private:
  std::string path_, tmp_;
  std::ofstream os_;
  std::size_t columns_ = 0;
  bool committed_ = false;
};

}  // namespace swanson::cli
