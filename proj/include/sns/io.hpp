#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "sns/model.hpp"

namespace sns::io {

/// Malformed or unreadable input file, or unwritable output.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> header;
  Matrix values;
};

/// Headered numeric CSV. Throws IoError naming the file and line.
Table read_csv(const std::filesystem::path& path);

/// Writes with 17 significant digits so values round-trip exactly.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const Matrix& values);

/// "x1", "x2", ... with the given prefix.
std::vector<std::string> numbered(const std::string& prefix, Eigen::Index n);

}  // namespace sns::io
