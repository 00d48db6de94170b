#include "emcurve/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace emcurve {

RasterImage::RasterImage(int width, int height, Rgb fill) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("image dimensions must be positive");
  data_.resize(3 * static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (std::size_t i = 0; i < data_.size(); i += 3) {
    data_[i] = fill.r;
    data_[i + 1] = fill.g;
    data_[i + 2] = fill.b;
  }
}

Rgb RasterImage::at(int x, int y) const {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) throw std::out_of_range("pixel out of range");
  const std::size_t i = 3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                             static_cast<std::size_t>(x));
  return {data_[i], data_[i + 1], data_[i + 2]};
}

void RasterImage::set(int x, int y, Rgb c) {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) throw std::out_of_range("pixel out of range");
  const std::size_t i = 3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                             static_cast<std::size_t>(x));
  data_[i] = c.r;
  data_[i + 1] = c.g;
  data_[i + 2] = c.b;
}

void RasterImage::plot(int x, int y, Rgb c) {
  if (x >= 0 && y >= 0 && x < width_ && y < height_) set(x, y, c);
}

// Bresenham.
void RasterImage::line(int x0, int y0, int x1, int y1, Rgb c) {
  const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  for (;;) {
    plot(x0, y0, c);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

void RasterImage::fill_rect(int x, int y, int w, int h, Rgb c) {
  for (int j = y; j < y + h; ++j) {
    for (int i = x; i < x + w; ++i) plot(i, j, c);
  }
}

void RasterImage::write_ppm(std::ostream& os) const {
  os << "P6\n" << width_ << ' ' << height_ << "\n255\n";
  os.write(reinterpret_cast<const char*>(data_.data()), static_cast<std::streamsize>(data_.size()));
}

void RasterImage::save_ppm(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write_ppm(os);
}

namespace {

int read_header_int(std::istream& is) {
  for (;;) {
    const int ch = is.peek();
    if (ch == '#') {
      std::string comment;
      std::getline(is, comment);
    } else if (ch == ' ' || ch == '\n' || ch == '\r' || ch == '\t') {
      is.get();
    } else {
      break;
    }
  }
  int v = 0;
  if (!(is >> v)) throw std::runtime_error("malformed PPM header");
  return v;
}

}  // namespace

RasterImage RasterImage::read_ppm(std::istream& is) {
  std::string magic(2, '\0');
  is.read(magic.data(), 2);
  if (magic != "P6") throw std::runtime_error("not a binary PPM (P6) stream");
  const int w = read_header_int(is);
  const int h = read_header_int(is);
  const int maxval = read_header_int(is);
  if (maxval != 255) throw std::runtime_error("only maxval 255 is supported");
  is.get();  // single whitespace before the raster
  RasterImage img(w, h);
  is.read(reinterpret_cast<char*>(img.data_.data()), static_cast<std::streamsize>(img.data_.size()));
  if (is.gcount() != static_cast<std::streamsize>(img.data_.size())) {
    throw std::runtime_error("truncated PPM raster");
  }
  return img;
}

RasterImage RasterImage::load_ppm(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  return read_ppm(is);
}

void ColorMapSpec::validate() const {
  if (!(eps_min < eps_max)) throw std::invalid_argument("color map needs eps_min < eps_max");
  if (band_count < 2) throw std::invalid_argument("color map needs at least two bands");
}

std::optional<int> band_index(double eps, const ColorMapSpec& spec) {
  if (eps < spec.eps_min) return std::nullopt;
  const double f = (eps - spec.eps_min) / (spec.eps_max - spec.eps_min) * spec.band_count;
  const double top = spec.band_count - 1;
  return static_cast<int>(std::min(std::floor(f), top));
}

Rgb hsv_to_rgb(double hue_deg, double saturation, double value) {
  const double h = std::fmod(std::fmod(hue_deg, 360.0) + 360.0, 360.0) / 60.0;
  const double c = value * saturation;
  const double x = c * (1.0 - std::abs(std::fmod(h, 2.0) - 1.0));
  const double m = value - c;
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(h)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  auto to8 = [](double v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
  return {to8(r + m), to8(g + m), to8(b + m)};
}

Rgb band_color(int band, const ColorMapSpec& spec) {
  const double f = static_cast<double>(band) / (spec.band_count - 1);
  return hsv_to_rgb(240.0 * (1.0 - f), 1.0, 1.0);
}

namespace {

// Smallest positive gap between sorted distinct values; 1 for a single value.
double axis_step(const std::vector<double>& values) {
  double step = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double d = values[i] - values[i - 1];
    if (d > 0.0 && (step == 0.0 || d < step)) step = d;
  }
  return step > 0.0 ? step : 1.0;
}

}  // namespace

int FieldLayout::column(double u) const { return static_cast<int>(std::lround((u - u0) / du)); }

int FieldLayout::row_from_bottom(double v) const {
  return static_cast<int>(std::lround((v - v0) / dv));
}

std::pair<int, int> FieldLayout::pixel(double u, double v) const {
  return {column(u) * cell_px, (nv - 1 - row_from_bottom(v)) * cell_px};
}

FieldLayout field_layout(const EpsilonField& field, int cell_px) {
  if (field.records.empty()) throw std::invalid_argument("cannot lay out an empty field");
  if (cell_px <= 0) throw std::invalid_argument("cell size must be positive");
  FieldLayout l;
  l.cell_px = cell_px;
  l.u0 = field.u_values.front();
  l.v0 = field.v_values.front();
  l.du = axis_step(field.u_values);
  l.dv = axis_step(field.v_values);
  l.nu = static_cast<int>(std::lround((field.u_values.back() - l.u0) / l.du)) + 1;
  l.nv = static_cast<int>(std::lround((field.v_values.back() - l.v0) / l.dv)) + 1;
  return l;
}

RasterImage render_field(const EpsilonField& field, const ColorMapSpec& spec, int cell_px) {
  spec.validate();
  const FieldLayout l = field_layout(field, cell_px);
  RasterImage img(l.nu * cell_px, l.nv * cell_px, spec.degenerate);
  for (const auto& r : field.records) {
    Rgb c = spec.open_curve;
    if (r.closed && r.epsilon) {
      const auto band = band_index(*r.epsilon, spec);
      c = band ? band_color(*band, spec) : spec.background;
    }
    const auto [px, py] = l.pixel(r.u, r.v);
    img.fill_rect(px, py, cell_px, cell_px, c);
  }
  return img;
}

RasterImage render_curve(const Triangle& t, const Domain& dom, int size, const CurveStyle& style) {
  if (size <= 0) throw std::invalid_argument("image size must be positive");
  const int w = size;
  const int h = std::max(1, static_cast<int>(std::lround(size * dom.height() / dom.width())));
  const double sx = dom.width() / w, sy = dom.height() / h;
  const GapField g(t);
  RasterImage img(w, h, style.background);

  if (style.shade) {
    for (int py = 0; py < h; ++py) {
      const double y = dom.y_max - (py + 0.5) * sy;
      for (int px = 0; px < w; ++px) {
        if (g(dom.x_min + (px + 0.5) * sx, y) >= 0.0) img.set(px, py, style.region);
      }
    }
  }

  auto to_px = [&](Point p) {
    return std::pair<int, int>{static_cast<int>(std::floor((p.x - dom.x_min) / sx)),
                               static_cast<int>(std::floor((dom.y_max - p.y) / sy))};
  };
  auto segment = [&](Point a, Point b, Rgb c) {
    const auto [x0, y0] = to_px(a);
    const auto [x1, y1] = to_px(b);
    img.line(x0, y0, x1, y1, c);
  };

  if (style.draw_curve) {
    const double cell = std::min(sx, sy);
    for (const auto& br : trace(g, dom, cell)) {
      for (std::size_t i = 1; i < br.points.size(); ++i) segment(br.points[i - 1], br.points[i], style.curve);
      if (br.closed && br.points.size() > 1) segment(br.points.back(), br.points.front(), style.curve);
    }
  }
  if (style.draw_triangle) {
    segment(t.a(), t.b(), style.triangle);
    segment(t.b(), t.c(), style.triangle);
    segment(t.c(), t.a(), style.triangle);
  }
  return img;
}

}  // namespace emcurve
