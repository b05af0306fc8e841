#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <utility>

#include "sfmap/curves.hpp"
#include "sfmap/errors.hpp"
#include "sfmap/sweep.hpp"

namespace sfmap {

// Overlays carry (rho, mu) coordinates, so the grid axes must be x = rho,
// y = mu.
struct OverlayAxisError : DomainError {
  explicit OverlayAxisError(const std::string& what) : DomainError(what) {}
};

enum class ColormapName { Diverging, Linear, Grayscale };

struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 1;  // 1 = grayscale, 3 = RGB
  std::vector<std::uint8_t> pixels;  // row-major, top row first
};

// One pixel per grid cell, y axis maximum at the top row. Finite values map
// through the clip window ([lo, hi]; default = data range, symmetric about 0
// for the diverging map) onto a fixed 256-entry colormap. Sentinels: Diverged
// black, ReachedZero white, Undefined magenta (gray 0/255/128 in grayscale
// output). Overlays draw as 1-pixel polylines; segments with an endpoint
// outside the grid rectangle are skipped.
Image render_grid(const SweepGrid& grid, ColormapName cmap,
                  std::optional<std::pair<double, double>> clip,
                  const CurveSet& overlays, bool color);

void write_ppm(const Image& img, const std::filesystem::path& path);  // P6, channels=3
void write_pgm(const Image& img, const std::filesystem::path& path);  // P5, channels=1

const char* to_string(ColormapName c);
std::optional<ColormapName> parse_colormap(std::string_view s);

}
