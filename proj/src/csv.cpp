#include "grassde/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace grassde {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view field, std::size_t line_no) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::invalid_argument("csv: bad number '" + std::string(field) + "' on line " +
                                std::to_string(line_no));
  }
  return value;
}

}  // namespace

Matrix parse_csv_matrix(std::string_view text) {
  std::vector<double> data;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;

  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;

    std::size_t width = 0;
    while (true) {
      const auto comma = line.find(',');
      data.push_back(parse_number(line.substr(0, comma), line_no));
      ++width;
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (rows == 0) {
      cols = width;
    } else if (width != cols) {
      throw std::invalid_argument("csv: line " + std::to_string(line_no) + " has " +
                                  std::to_string(width) + " fields, expected " +
                                  std::to_string(cols));
    }
    ++rows;
  }
  if (rows == 0) {
    throw std::invalid_argument("csv: no data");
  }
  return Matrix(rows, cols, std::move(data));
}

Matrix read_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv_matrix(buf.str());
}

std::string format_csv_matrix(const Matrix& m) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j > 0) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace grassde
