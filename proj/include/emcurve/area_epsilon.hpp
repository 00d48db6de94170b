#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "emcurve/curve_tracing.hpp"
#include "emcurve/geometry.hpp"
#include "emcurve/parallel.hpp"

namespace emcurve {

/// Area excess of the equilateral triangle, the conjectured minimum.
inline constexpr double kEpsilon0 = 0.8140420779;

enum class EpsilonMethod { pixel, scanline };

std::string to_string(EpsilonMethod m);
EpsilonMethod parse_epsilon_method(const std::string& text);

struct EpsilonResult {
  std::optional<double> epsilon;  // present iff closed
  bool closed = false;
  double area_curve = 0.0;     // area of {g >= 0}
  double area_triangle = 0.0;
  EpsilonMethod method = EpsilonMethod::pixel;
  double error_estimate = 0.0;  // scanline only: absolute area error estimate
  std::uint64_t evaluations = 0;  // pixels counted or columns integrated
};

/// Square pixels of side `step` tiling `domain` from its lower-left corner.
/// The last row/column may overhang the domain when the ratio is fractional.
struct PixelGridSpec {
  Domain domain;
  double step = 1.0;

  PixelGridSpec(Domain dom, double pixel_step);
  std::size_t columns() const;
  std::size_t rows() const;
  double center_x(std::size_t i) const { return domain.x_min + (static_cast<double>(i) + 0.5) * step; }
  double center_y(std::size_t j) const { return domain.y_min + (static_cast<double>(j) + 0.5) * step; }
};

/// Number of pixel centres with g >= 0.
std::uint64_t count_inside_pixels(const GapField& g, const PixelGridSpec& grid, int threads = 1);

/// Pixel-count estimate: inside pixels times step^2. Closedness is tested on
/// the grid's domain; open curves leave epsilon empty.
EpsilonResult epsilon_pixel(const Triangle& t, const PixelGridSpec& grid, int threads = 1);

class OpenCurveError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double area_estimate, double error_estimate)
      : std::runtime_error(what), area_estimate_(area_estimate), error_estimate_(error_estimate) {}
  double area_estimate() const { return area_estimate_; }
  double error_estimate() const { return error_estimate_; }

private:
  double area_estimate_;
  double error_estimate_;
};

struct ScanlineOptions {
  std::size_t max_columns = 400000;
  Deadline deadline;
};

/// Integrates, over x, the length of {y : g(x, y) >= 0} until the estimated
/// absolute error drops below tol * area(triangle) (which is below
/// tol * area(curve)). Throws OpenCurveError if the curve is not closed in
/// `dom` and ConvergenceError when the column budget runs out.
EpsilonResult epsilon_scanline(const Triangle& t, const Domain& dom, double tol,
                               const ScanlineOptions& opts = {});

/// Area excess of A(0, sqrt 3), B(-1, 0), C(1, 0) to within `tol`, computed
/// on one sixth of the plane around the centre and multiplied by six.
double epsilon0_equilateral(double tol = 1e-6);

}  // namespace emcurve
