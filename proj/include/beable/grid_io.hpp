#pragma once

#include <filesystem>
#include <iosfwd>

#include "beable/grid_function.hpp"

namespace beable {

// Grid file layout:
//
//   # step <step> nodes <count>
//   <q_0> <value_0>
//   <q_1> <value_1>
//   ...
//
// Blank lines and other '#' lines are ignored, before or after the header.
// Abscissae must follow q_0 + i * step. A file whose trapezoidal norm deviates
// from 1 by less than 1e-3 is renormalized; a larger deviation raises
// NotNormalized. Malformed content raises ParseError carrying the 1-based line
// number.

GridFunction parse_grid(std::istream& in);
GridFunction parse_grid_file(const std::filesystem::path& path);

void write_grid(std::ostream& out, const GridFunction& f);
void write_grid_file(const std::filesystem::path& path, const GridFunction& f);

}  // namespace beable
