#include "egorank/csv.hpp"

#include "egorank/error.hpp"

namespace egorank::csv {

bool Reader::next(std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;  // saw at least one char of this record
  bool field_was_quoted = false;
  int c;

  if (first_) {
    first_ = false;
    if (in_.peek() == 0xEF) {
      char bom[3];
      in_.read(bom, 3);
      if (!(static_cast<unsigned char>(bom[1]) == 0xBB &&
            static_cast<unsigned char>(bom[2]) == 0xBF)) {
        // Not a BOM; put the bytes back into the first field.
        field.assign(bom, static_cast<std::size_t>(in_.gcount()));
        any = true;
      }
    }
  }

  record_line_ = current_line_;
  while ((c = in_.get()) != std::char_traits<char>::eof()) {
    char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++current_line_;
        field.push_back(ch);
      }
      continue;
    }
    if (ch == '"' && field.empty() && !field_was_quoted) {
      in_quotes = true;
      field_was_quoted = true;
      any = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      field_was_quoted = false;
      any = true;
    } else if (ch == '\r' || ch == '\n') {
      if (ch == '\r' && in_.peek() == '\n') in_.get();
      ++current_line_;
      if (!any) {
        record_line_ = current_line_;
        continue;  // blank line
      }
      fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(ch);
      any = true;
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::kBadRow,
                "unterminated quoted field starting on line " + std::to_string(record_line_));
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

std::string quote_if_needed(const std::string& field) {
  bool needs = field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs) return field;
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << quote_if_needed(fields[i]);
  }
  out << '\n';
}

}  // namespace egorank::csv
