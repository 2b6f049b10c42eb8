#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace egorank::csv {

// RFC 4180 reader: quoted fields may contain commas, quotes ("") and line
// breaks. A UTF-8 BOM before the first field is skipped.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Reads the next record into `fields`. Returns false at end of input.
  // Blank lines are skipped.
  bool next(std::vector<std::string>& fields);

  // 1-based physical line on which the last returned record started.
  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t current_line_ = 1;
  std::size_t record_line_ = 0;
  bool first_ = true;
};

void write_row(std::ostream& out, std::span<const std::string> fields);
std::string quote_if_needed(const std::string& field);

}  // namespace egorank::csv
