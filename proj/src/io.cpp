#include "sns/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace sns::io {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r\"");
    const auto e = cell.find_last_not_of(" \t\r\"");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  Table t;
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  t.header = split(line);

  std::vector<double> flat;
  std::size_t rows = 0;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (cells.size() != t.header.size()) {
      std::ostringstream os;
      os << path.string() << ":" << lineno << ": expected " << t.header.size() << " fields, got "
         << cells.size();
      throw IoError(os.str());
    }
    for (const auto& c : cells) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc() || ptr != c.data() + c.size()) {
        std::ostringstream os;
        os << path.string() << ":" << lineno << ": not a number: '" << c << "'";
        throw IoError(os.str());
      }
      flat.push_back(v);
    }
    ++rows;
  }

  const auto cols = static_cast<Eigen::Index>(t.header.size());
  t.values.resize(static_cast<Eigen::Index>(rows), cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      t.values(static_cast<Eigen::Index>(r), c) = flat[r * static_cast<std::size_t>(cols) + c];
    }
  }
  return t;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const Matrix& values) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out.precision(17);
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << "\n";
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) out << (c ? "," : "") << values(r, c);
    out << "\n";
  }
  if (!out) throw IoError("error writing " + path.string());
}

std::vector<std::string> numbered(const std::string& prefix, Eigen::Index n) {
  std::vector<std::string> out;
  for (Eigen::Index i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace sns::io
