#pragma once

#include <filesystem>
#include <string>

#include "sfmap/sweep.hpp"

namespace sfmap {

// HSFG1 grid file: a canonical key=value text header terminated by a blank
// line, then row-major little-endian binary64 values. write(read(f)) is
// byte-identical for files produced by write_grid.
std::string grid_header(const SweepGrid& g);
void write_grid(const SweepGrid& g, const std::filesystem::path& path);
SweepGrid read_grid(const std::filesystem::path& path);

}
