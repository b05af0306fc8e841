#pragma once

#include <filesystem>

#include "sfmap/curves.hpp"

namespace sfmap {

// CSV with header kind,k_or_n,rho,mu; polylines separated by one blank line;
// reals carry 17 significant digits so the round-trip is exact. Curves with
// no points are not written.
void write_curves(const CurveSet& cs, const std::filesystem::path& path);
CurveSet read_curves(const std::filesystem::path& path);

}
