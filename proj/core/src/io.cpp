#include "tacnode/io.hpp"

#include <cstdio>

#include "json.hpp"

namespace tacnode {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string tool_version() {
#ifdef TACNODE_VERSION
  return TACNODE_VERSION;
#else
  return "dev";
#endif
}

void FileMeta::write_csv_header(std::ostream& os) const {
  os << "# tool_version=" << tool_version() << "\n";
  os << "# command=" << command << "\n";
  os << "# config=" << config << "\n";
  os << "# seed=" << seed << "\n";
}

void FileMeta::fill_json(void* json_object) const {
  auto& j = *static_cast<nlohmann::json*>(json_object);
  j["tool_version"] = tool_version();
  j["command"] = command;
  j["config"] = config;
  j["seed"] = seed;
}

namespace {

std::string csv_escape(const std::string& s) {
  bool need = s.find_first_of(",\"\n") != std::string::npos;
  if (!need) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void CsvWriter::comment_block(const FileMeta& meta) { meta.write_csv_header(os_); }

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) os_ << ',';
    os_ << csv_escape(fields[i]);
  }
  os_ << '\n';
}

void CsvWriter::numeric_row(const std::vector<double>& values) {
  std::vector<std::string> fields;
  fields.reserve(values.size());
  for (double v : values) fields.push_back(format_double(v));
  row(fields);
}

}  // namespace tacnode
