#include "beable/grid_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "beable/error.hpp"

namespace beable {

namespace {

constexpr double kRenormalizeLimit = 1e-3;

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t begin = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > begin) tokens.push_back(line.substr(begin, i - begin));
  }
  return tokens;
}

template <class T>
T parse_number(std::string_view token, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a number, found '" + std::string(token) + "'");
  }
  return value;
}

bool is_blank(std::string_view line) {
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool is_comment(std::string_view line) {
  const auto first = line.find_first_not_of(" \t");
  return first != std::string_view::npos && line[first] == '#';
}

}  // namespace

GridFunction parse_grid(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  double step = 0.0;
  std::size_t nodes = 0;
  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    auto tokens = split_tokens(line);
    // Comments may precede the header; a comment starting with "step" is the header.
    const bool header_like = tokens.size() >= 2 && tokens[0] == "#" && tokens[1] == "step";
    if (!header_like && is_comment(line)) continue;
    if (!header_like || tokens.size() != 5 || tokens[3] != "nodes") {
      throw ParseError(line_no, "expected header '# step <step> nodes <count>'");
    }
    step = parse_number<double>(tokens[2], line_no);
    nodes = parse_number<std::size_t>(tokens[4], line_no);
    if (!(step > 0.0) || !std::isfinite(step)) throw ParseError(line_no, "step must be positive");
    if (nodes < 2) throw ParseError(line_no, "at least 2 nodes are required");
    have_header = true;
  }
  if (!have_header) throw ParseError(line_no + 1, "missing header");

  std::vector<double> values;
  values.reserve(nodes);
  double start = 0.0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line) || is_comment(line)) continue;
    const auto tokens = split_tokens(line);
    if (tokens.size() != 2) {
      throw ParseError(line_no, "expected 2 columns, found " + std::to_string(tokens.size()));
    }
    const double q = parse_number<double>(tokens[0], line_no);
    const double v = parse_number<double>(tokens[1], line_no);
    if (values.size() >= nodes) throw ParseError(line_no, "more rows than the declared node count");
    if (values.empty()) {
      start = q;
    } else {
      const double expected = start + static_cast<double>(values.size()) * step;
      if (std::abs(q - expected) > 1e-6 * step) {
        throw ParseError(line_no, "abscissa does not match the declared step");
      }
    }
    if (!(v >= 0.0) || !std::isfinite(v)) throw ParseError(line_no, "value must be non-negative");
    values.push_back(v);
  }
  if (values.size() != nodes) {
    throw ParseError(line_no, "declared " + std::to_string(nodes) + " nodes, found " +
                                  std::to_string(values.size()));
  }

  const double norm = trapezoid_norm(step, values);
  if (!(std::abs(norm - 1.0) < kRenormalizeLimit)) {
    throw NotNormalized("trapezoidal norm " + std::to_string(norm) + " deviates from 1 by 1e-3 or more");
  }
  return GridFunction::normalized(start, step, std::move(values));
}

GridFunction parse_grid_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open grid file " + path.string());
  return parse_grid(in);
}

void write_grid(std::ostream& out, const GridFunction& f) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", f.step());
  out << "# step " << buffer << " nodes " << f.size() << '\n';
  const auto values = f.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buffer, sizeof buffer, "%.17g", f.node(i));
    out << buffer << ' ';
    std::snprintf(buffer, sizeof buffer, "%.17g", values[i]);
    out << buffer << '\n';
  }
}

void write_grid_file(const std::filesystem::path& path, const GridFunction& f) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write grid file " + path.string());
  write_grid(out, f);
  if (!out) throw IoError("failed while writing " + path.string());
}

}  // namespace beable
