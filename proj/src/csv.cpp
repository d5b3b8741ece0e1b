#include "purfit/csv.hpp"

#include "purfit/errors.hpp"

namespace purfit {

CsvReader::CsvReader(const std::filesystem::path& path) : in_(path, std::ios::binary) {
  if (!in_) throw IoError("cannot open " + path.string());
  if (!read_record(header_) || header_.empty())
    throw IngestError("CSV file " + path.string() + " has no header row");
}

bool CsvReader::next_record(std::vector<std::string>& fields) {
  if (!read_record(fields)) return false;
  ++record_number_;
  return true;
}

bool CsvReader::read_record(std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  int c;
  while ((c = in_.get()) != EOF) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in_.peek() == '"') {
          field.push_back('"');
          in_.get();
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(static_cast<char>(c));
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty())
          throw IngestError("stray quote inside unquoted CSV field");
        in_quotes = true;
        break;
      case ',':
        fields.push_back(std::move(field));
        field.clear();
        break;
      case '\r':
        if (in_.peek() == '\n') in_.get();
        [[fallthrough]];
      case '\n':
        fields.push_back(std::move(field));
        return true;
      default:
        field.push_back(static_cast<char>(c));
    }
  }
  if (in_quotes) throw IngestError("unterminated quoted CSV field");
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

void write_csv_field(std::string& out, const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) {
    out += field;
    return;
  }
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

}  // namespace purfit
