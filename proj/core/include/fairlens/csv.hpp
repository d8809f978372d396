#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace fairlens {

// Parsed CSV contents: header plus string records, row order preserved.
struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column_index(const std::string& name) const;
  bool has_column(const std::string& name) const;
};

RawTable load_csv(const std::string& path);
RawTable parse_csv(std::istream& in, const std::string& origin = "<stream>");

void write_csv(const std::string& path, const RawTable& table);
std::string to_csv(const RawTable& table);

}  // namespace fairlens
