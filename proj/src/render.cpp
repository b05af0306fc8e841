#include "sfmap/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>

namespace sfmap {

namespace {

struct Rgb {
  std::uint8_t r, g, b;
};

using Lut = std::array<Rgb, 256>;

Lut build_lut(const Rgb* anchors, std::size_t n) {
  Lut lut;
  for (std::size_t q = 0; q < 256; ++q) {
    const double pos = static_cast<double>(q) / 255.0 * static_cast<double>(n - 1);
    const std::size_t i0 = std::min(static_cast<std::size_t>(pos), n - 2);
    const double frac = pos - static_cast<double>(i0);
    auto mix = [&](std::uint8_t a, std::uint8_t b) {
      return static_cast<std::uint8_t>(
          std::lround(a + frac * (static_cast<double>(b) - a)));
    };
    lut[q] = {mix(anchors[i0].r, anchors[i0 + 1].r),
              mix(anchors[i0].g, anchors[i0 + 1].g),
              mix(anchors[i0].b, anchors[i0 + 1].b)};
  }
  return lut;
}

const Lut& lut_for(ColormapName c) {
  static const Rgb linear_anchors[] = {
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  static const Rgb diverging_anchors[] = {{5, 48, 97},    {33, 102, 172},
                                          {146, 197, 222}, {247, 247, 247},
                                          {244, 165, 130}, {178, 24, 43},
                                          {103, 0, 31}};
  static const Rgb gray_anchors[] = {{0, 0, 0}, {255, 255, 255}};
  static const Lut linear = build_lut(linear_anchors, std::size(linear_anchors));
  static const Lut diverging =
      build_lut(diverging_anchors, std::size(diverging_anchors));
  static const Lut gray = build_lut(gray_anchors, std::size(gray_anchors));
  switch (c) {
    case ColormapName::Linear: return linear;
    case ColormapName::Diverging: return diverging;
    case ColormapName::Grayscale: return gray;
  }
  return gray;
}

Rgb overlay_color(CurveKind k) {
  switch (k) {
    case CurveKind::GammaG: return {0, 170, 0};
    case CurveKind::GammaP: return {160, 32, 240};
    case CurveKind::BelyakovExplicit: return {20, 20, 20};
    case CurveKind::BelyakovImplicit: return {90, 90, 90};
    case CurveKind::HomoclinicOrderN: return {255, 140, 0};
  }
  return {0, 0, 0};
}

}  // namespace

Image render_grid(const SweepGrid& grid, ColormapName cmap,
                  std::optional<std::pair<double, double>> clip,
                  const CurveSet& overlays, bool color) {
  if (grid.x.count < 1 || grid.y.count < 1 ||
      grid.values.size() != grid.x.count * grid.y.count)
    throw DomainError("render_grid: malformed grid");
  if (!overlays.curves.empty() &&
      (grid.x.param != Param::Rho || grid.y.param != Param::Mu))
    throw OverlayAxisError(
        "render_grid: overlays carry (rho, mu) points but the grid axes are (" +
        std::string(to_string(grid.x.param)) + ", " +
        std::string(to_string(grid.y.param)) + ")");

  double lo, hi;
  if (clip) {
    lo = clip->first;
    hi = clip->second;
    if (!(lo <= hi)) throw DomainError("render_grid: clip lo must be <= hi");
  } else {
    lo = 0.0;
    hi = 1.0;
    bool any = false;
    for (double v : grid.values) {
      if (is_sentinel(v) || !std::isfinite(v)) continue;
      if (!any) {
        lo = hi = v;
        any = true;
      } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    if (any && cmap == ColormapName::Diverging) {
      const double a = std::max(std::abs(lo), std::abs(hi));
      lo = -a;
      hi = a;
    }
  }
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }

  const std::size_t w = grid.x.count;
  const std::size_t h = grid.y.count;
  Image img;
  img.width = w;
  img.height = h;
  img.channels = color ? 3 : 1;
  img.pixels.assign(w * h * img.channels, 0);
  const Lut& lut = lut_for(cmap);

  auto put = [&](std::size_t col, std::size_t row, Rgb c, std::uint8_t level) {
    const std::size_t base = (row * w + col) * img.channels;
    if (color) {
      img.pixels[base] = c.r;
      img.pixels[base + 1] = c.g;
      img.pixels[base + 2] = c.b;
    } else {
      img.pixels[base] = level;
    }
  };

  for (std::size_t j = 0; j < h; ++j) {
    const std::size_t row = h - 1 - j;
    for (std::size_t i = 0; i < w; ++i) {
      const double v = grid.at(i, j);
      if (v == kSentinelDiverged) {
        put(i, row, {0, 0, 0}, 0);
      } else if (v == kSentinelReachedZero) {
        put(i, row, {255, 255, 255}, 255);
      } else if (v == kSentinelUndefined || !std::isfinite(v)) {
        put(i, row, {255, 0, 255}, 128);
      } else {
        const double t = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
        const auto q = static_cast<std::uint8_t>(std::lround(t * 255.0));
        put(i, row, lut[q], q);
      }
    }
  }

  // overlays: 1-pixel Bresenham polylines; skip segments leaving the rect
  auto draw = [&](std::size_t ca, std::size_t ra, std::size_t cb,
                  std::size_t rb, Rgb c) {
    long x0 = static_cast<long>(ca), y0 = static_cast<long>(ra);
    const long x1 = static_cast<long>(cb), y1 = static_cast<long>(rb);
    const long dx = std::labs(x1 - x0), sx = x0 < x1 ? 1 : -1;
    const long dy = -std::labs(y1 - y0), sy = y0 < y1 ? 1 : -1;
    long err = dx + dy;
    for (;;) {
      put(static_cast<std::size_t>(x0), static_cast<std::size_t>(y0), c, 0);
      if (x0 == x1 && y0 == y1) break;
      const long e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x0 += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y0 += sy;
      }
    }
  };
  auto to_pixel = [&](double r, double m, std::size_t& col, std::size_t& row) {
    if (!(r >= grid.x.min && r <= grid.x.max && m >= grid.y.min &&
          m <= grid.y.max))
      return false;
    const double tx = (r - grid.x.min) / (grid.x.max - grid.x.min);
    const double ty = (m - grid.y.min) / (grid.y.max - grid.y.min);
    col = static_cast<std::size_t>(
        std::lround(tx * static_cast<double>(w - 1)));
    row = h - 1 -
          static_cast<std::size_t>(std::lround(ty * static_cast<double>(h - 1)));
    return true;
  };
  for (const Curve& c : overlays.curves) {
    const Rgb rgb = overlay_color(c.kind);
    for (std::size_t s = 0; s + 1 < c.points.size(); ++s) {
      std::size_t ca, ra, cb, rb;
      if (!to_pixel(c.points[s].first, c.points[s].second, ca, ra)) continue;
      if (!to_pixel(c.points[s + 1].first, c.points[s + 1].second, cb, rb))
        continue;
      draw(ca, ra, cb, rb, rgb);
    }
    if (c.points.size() == 1) {
      std::size_t ca, ra;
      if (to_pixel(c.points[0].first, c.points[0].second, ca, ra))
        put(ca, ra, rgb, 0);
    }
  }
  return img;
}

void write_ppm(const Image& img, const std::filesystem::path& path) {
  if (img.channels != 3) throw DomainError("write_ppm: needs a 3-channel image");
  if (img.pixels.size() != img.width * img.height * 3)
    throw DomainError("write_ppm: malformed image");
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("write_ppm: cannot open " + path.string());
  f << "P6\n" << img.width << ' ' << img.height << "\n255\n";
  f.write(reinterpret_cast<const char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  f.flush();
  if (!f) throw IoError("write_ppm: write failed for " + path.string());
}

void write_pgm(const Image& img, const std::filesystem::path& path) {
  if (img.channels != 1) throw DomainError("write_pgm: needs a 1-channel image");
  if (img.pixels.size() != img.width * img.height)
    throw DomainError("write_pgm: malformed image");
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("write_pgm: cannot open " + path.string());
  f << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  f.write(reinterpret_cast<const char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  f.flush();
  if (!f) throw IoError("write_pgm: write failed for " + path.string());
}

const char* to_string(ColormapName c) {
  switch (c) {
    case ColormapName::Diverging: return "diverging";
    case ColormapName::Linear: return "linear";
    case ColormapName::Grayscale: return "grayscale";
  }
  return "?";
}

std::optional<ColormapName> parse_colormap(std::string_view s) {
  if (s == "diverging") return ColormapName::Diverging;
  if (s == "linear") return ColormapName::Linear;
  if (s == "grayscale") return ColormapName::Grayscale;
  return std::nullopt;
}

}
