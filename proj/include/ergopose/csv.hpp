#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ergopose {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by header name; throws InvalidParameter if absent.
  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
};

/// Fixed formatting used for every numeric CSV cell: 9 significant digits,
/// "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double x);

/// RFC-4180 style, LF line endings; fields containing a comma, quote or
/// newline are quoted.
std::string to_csv(const CsvTable& table);
CsvTable parse_csv(std::string_view text);

}  // namespace ergopose
