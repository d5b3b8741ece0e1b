#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace purfit {

// RFC 4180 reader: quoted fields, escaped quotes, CRLF line ends and
// embedded newlines inside quotes.
class CsvReader {
 public:
  explicit CsvReader(const std::filesystem::path& path);

  const std::vector<std::string>& header() const noexcept { return header_; }
  // False at end of input. Throws IngestError on malformed quoting.
  bool next_record(std::vector<std::string>& fields);
  std::size_t record_number() const noexcept { return record_number_; }

 private:
  bool read_record(std::vector<std::string>& fields);

  std::ifstream in_;
  std::vector<std::string> header_;
  std::size_t record_number_ = 0;  // 1-based data record counter
};

void write_csv_field(std::string& out, const std::string& field);

}  // namespace purfit
