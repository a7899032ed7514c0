#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace tacnode {

// Round-trippable decimal form of a double (17 significant digits).
std::string format_double(double x);

std::string tool_version();

// Key/value metadata emitted at the top of every output file.
struct FileMeta {
  std::string command;
  std::string config;
  std::uint64_t seed = 0;

  void write_csv_header(std::ostream& os) const;   // '#' comment lines
  void fill_json(void* json_object) const;         // nlohmann::json*
};

// Minimal RFC-4180 writer: comma separator, '.' decimal point, LF rows,
// quoting only when needed.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void comment_block(const FileMeta& meta);
  void row(const std::vector<std::string>& fields);
  void numeric_row(const std::vector<double>& values);

 private:
  std::ostream& os_;
};

}  // namespace tacnode
