#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "emcurve/area_epsilon.hpp"
#include "emcurve/curve_tracing.hpp"
#include "emcurve/sweep.hpp"

namespace emcurve {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Row-major 8-bit RGB raster, row 0 at the top.
class RasterImage {
public:
  RasterImage(int width, int height, Rgb fill = {255, 255, 255});

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<std::uint8_t>& bytes() const { return data_; }

  Rgb at(int x, int y) const;
  void set(int x, int y, Rgb c);
  /// Ignores pixels outside the image.
  void plot(int x, int y, Rgb c);
  void line(int x0, int y0, int x1, int y1, Rgb c);
  void fill_rect(int x, int y, int w, int h, Rgb c);

  /// Binary PPM: "P6\n<w> <h>\n255\n" followed by raw RGB bytes.
  void write_ppm(std::ostream& os) const;
  void save_ppm(const std::filesystem::path& path) const;
  static RasterImage read_ppm(std::istream& is);
  static RasterImage load_ppm(const std::filesystem::path& path);

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

private:
  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

/// Equidistant epsilon bands from eps_min to eps_max. Cells below eps_min
/// show the background; the hue runs from 240 deg (band 0, blue) down to
/// 0 deg (top band, red) at full saturation and value.
struct ColorMapSpec {
  double eps_min = kEpsilon0;
  double eps_max = 2.0;
  int band_count = 64;
  Rgb background{255, 255, 255};
  Rgb open_curve{160, 160, 160};
  Rgb degenerate{64, 64, 64};

  void validate() const;
};

/// floor((eps - eps_min) / (eps_max - eps_min) * bands), clamped to the top
/// band; empty below eps_min.
std::optional<int> band_index(double eps, const ColorMapSpec& spec);
Rgb band_color(int band, const ColorMapSpec& spec);
Rgb hsv_to_rgb(double hue_deg, double saturation, double value);

/// Cell layout of a rendered field: u increases to the right, v upwards.
/// Grid positions missing from the field (the v = 0 row) are drawn with the
/// degenerate colour.
struct FieldLayout {
  double u0 = 0.0, du = 1.0;
  double v0 = 0.0, dv = 1.0;
  int nu = 1, nv = 1;
  int cell_px = 8;

  int column(double u) const;
  int row_from_bottom(double v) const;
  /// Top-left pixel of the block for (u, v).
  std::pair<int, int> pixel(double u, double v) const;
};

FieldLayout field_layout(const EpsilonField& field, int cell_px = 8);

RasterImage render_field(const EpsilonField& field, const ColorMapSpec& spec, int cell_px = 8);

struct CurveStyle {
  bool shade = true;
  bool draw_curve = true;
  bool draw_triangle = true;
  Rgb background{255, 255, 255};
  Rgb region{170, 200, 240};
  Rgb curve{200, 30, 30};
  Rgb triangle{0, 0, 0};
};

/// `size` pixels across; the height follows the domain's aspect ratio. Pixel
/// centres with g >= 0 are shaded, then the traced curve and the triangle
/// edges are drawn on top.
RasterImage render_curve(const Triangle& t, const Domain& dom, int size,
                         const CurveStyle& style = {});

}  // namespace emcurve
