#ifndef INFOKERNEL_CLI_CSV_HPP
#define INFOKERNEL_CLI_CSV_HPP

#include <string>
#include <vector>

namespace infokernel::cli {

/// Fixed-point with `precision` decimals; "inf", "-inf", "nan" otherwise.
std::string format_number(double v, int precision);

/// RFC 4180 table with LF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row);
  std::string render() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace infokernel::cli

#endif
