#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "sfmap/errors.hpp"
#include "sfmap/render.hpp"

using namespace sfmap;
namespace fs = std::filesystem;

namespace {

SweepGrid tiny_grid() {
  SweepGrid g;
  g.x = {Param::Rho, 0.0, 1.0, 3};
  g.y = {Param::Mu, 0.0, 1.0, 2};
  // row j=0 (mu=0): plain values; row j=1 (mu=1): one of each sentinel
  g.values = {0.0, 0.5, 1.0,
              kSentinelDiverged, kSentinelReachedZero, kSentinelUndefined};
  return g;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() /
          ("sfmap-render-" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(dir, ec); }
  fs::path operator/(const char* name) const { return dir / name; }
};

}  // namespace

TEST_CASE("grayscale rendering: orientation, clip, sentinels") {
  Image img = render_grid(tiny_grid(), ColormapName::Grayscale,
                          std::pair{0.0, 1.0}, {}, false);
  REQUIRE(img.width == 3);
  REQUIRE(img.height == 2);
  REQUIRE(img.channels == 1);
  REQUIRE(img.pixels.size() == 6);
  // Top pixel row is the maximal mu row (j = 1): the sentinels.
  CHECK(img.pixels[0] == 0);    // diverged -> black
  CHECK(img.pixels[1] == 255);  // reached zero -> white
  CHECK(img.pixels[2] == 128);  // undefined -> mid gray
  // Bottom row: linear ramp through the clip window.
  CHECK(img.pixels[3] == 0);
  CHECK(img.pixels[4] == 128);
  CHECK(img.pixels[5] == 255);
}

TEST_CASE("color rendering: colormap anchors and sentinel colors") {
  Image img = render_grid(tiny_grid(), ColormapName::Linear,
                          std::pair{0.0, 1.0}, {}, true);
  REQUIRE(img.channels == 3);
  REQUIRE(img.pixels.size() == 18);
  auto px = [&](std::size_t col, std::size_t row) {
    const std::size_t b = (row * 3 + col) * 3;
    return std::array<std::uint8_t, 3>{img.pixels[b], img.pixels[b + 1],
                                       img.pixels[b + 2]};
  };
  CHECK(px(0, 1) == std::array<std::uint8_t, 3>{68, 1, 84});     // clip lo
  CHECK(px(2, 1) == std::array<std::uint8_t, 3>{253, 231, 37});  // clip hi
  CHECK(px(0, 0) == std::array<std::uint8_t, 3>{0, 0, 0});
  CHECK(px(1, 0) == std::array<std::uint8_t, 3>{255, 255, 255});
  CHECK(px(2, 0) == std::array<std::uint8_t, 3>{255, 0, 255});
}

TEST_CASE("diverging colormap defaults to a symmetric window") {
  SweepGrid g = tiny_grid();
  g.values = {-1.0, 0.0, 0.5, 0.0, 0.0, 0.0};
  Image img = render_grid(g, ColormapName::Diverging, std::nullopt, {}, false);
  // window [-1, 1]: -1 -> 0, 0 -> 128, 0.5 -> 191
  CHECK(img.pixels[3] == 0);
  CHECK(img.pixels[4] == 128);
  CHECK(img.pixels[5] == 191);
}

TEST_CASE("degenerate clip widens to a unit window") {
  SweepGrid g = tiny_grid();
  g.values = {0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
  Image img = render_grid(g, ColormapName::Grayscale, std::nullopt, {}, false);
  for (auto v : img.pixels) CHECK(v == 128);
}

TEST_CASE("clip validation") {
  CHECK_THROWS_AS(render_grid(tiny_grid(), ColormapName::Grayscale,
                              std::pair{1.0, 0.0}, {}, false),
                  DomainError);
}

TEST_CASE("render rejects malformed grids") {
  SweepGrid g = tiny_grid();
  g.values.pop_back();
  CHECK_THROWS_AS(render_grid(g, ColormapName::Grayscale, std::nullopt, {}, false),
                  DomainError);
}

TEST_CASE("overlays draw on (rho, mu) grids only") {
  CurveSet overlay;
  Curve c;
  c.kind = CurveKind::GammaG;
  c.points = {{0.0, 0.0}, {1.0, 1.0}};
  overlay.curves.push_back(c);

  SweepGrid flat = tiny_grid();
  flat.values = {0.5, 0.5, 0.5, 0.5, 0.5, 0.5};

  SUBCASE("diagonal polyline marks both endpoints") {
    Image img = render_grid(flat, ColormapName::Grayscale, std::pair{0.0, 1.0},
                            overlay, false);
    CHECK(img.pixels[1 * 3 + 0] == 0);  // (rho=0, mu=0) -> col 0, bottom row
    CHECK(img.pixels[0 * 3 + 2] == 0);  // (rho=1, mu=1) -> col 2, top row
  }

  SUBCASE("segments with an endpoint off the grid are skipped") {
    CurveSet off;
    Curve oc;
    oc.kind = CurveKind::GammaP;
    oc.points = {{0.5, 0.5}, {1.5, 0.5}};
    off.curves.push_back(oc);
    Image img = render_grid(flat, ColormapName::Grayscale, std::pair{0.0, 1.0},
                            off, false);
    Image plain = render_grid(flat, ColormapName::Grayscale, std::pair{0.0, 1.0},
                              {}, false);
    CHECK(img.pixels == plain.pixels);
  }

  SUBCASE("a single in-range point draws a dot") {
    CurveSet dot;
    Curve dc;
    dc.kind = CurveKind::HomoclinicOrderN;
    dc.points = {{0.5, 0.5}};
    dot.curves.push_back(dc);
    Image img = render_grid(flat, ColormapName::Grayscale, std::pair{0.0, 1.0},
                            dot, false);
    CHECK(img.pixels[0 * 3 + 1] == 0);
  }

  SUBCASE("mismatched axes raise OverlayAxisError") {
    SweepGrid g = flat;
    g.x.param = Param::Omega;
    CHECK_THROWS_AS(
        render_grid(g, ColormapName::Grayscale, std::nullopt, overlay, false),
        OverlayAxisError);
    // ...but only when there is something to draw.
    CHECK_NOTHROW(render_grid(g, ColormapName::Grayscale, std::nullopt, {}, false));
  }
}

TEST_CASE("ppm and pgm writers") {
  TempDir tmp;
  Image color = render_grid(tiny_grid(), ColormapName::Linear,
                            std::pair{0.0, 1.0}, {}, true);
  Image gray = render_grid(tiny_grid(), ColormapName::Grayscale,
                           std::pair{0.0, 1.0}, {}, false);

  const fs::path ppm = tmp / "img.ppm";
  const fs::path pgm = tmp / "img.pgm";
  write_ppm(color, ppm);
  write_pgm(gray, pgm);

  const std::string p6 = slurp(ppm);
  CHECK(p6.rfind("P6\n3 2\n255\n", 0) == 0);
  CHECK(p6.size() == 11 + 18);
  const std::string p5 = slurp(pgm);
  CHECK(p5.rfind("P5\n3 2\n255\n", 0) == 0);
  CHECK(p5.size() == 11 + 6);

  CHECK_THROWS_AS(write_ppm(gray, tmp / "x.ppm"), DomainError);
  CHECK_THROWS_AS(write_pgm(color, tmp / "x.pgm"), DomainError);
  CHECK_THROWS_AS(write_ppm(color, "/nonexistent-dir/x.ppm"), IoError);
  CHECK_THROWS_AS(write_pgm(gray, "/nonexistent-dir/x.pgm"), IoError);
}

TEST_CASE("colormap strings") {
  CHECK(std::string(to_string(ColormapName::Diverging)) == "diverging");
  CHECK(std::string(to_string(ColormapName::Linear)) == "linear");
  CHECK(std::string(to_string(ColormapName::Grayscale)) == "grayscale");
  CHECK(parse_colormap("linear") == ColormapName::Linear);
  CHECK(!parse_colormap("jet").has_value());
}
