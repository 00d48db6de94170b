#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "emcurve/geometry.hpp"
#include "emcurve/parallel.hpp"

namespace emcurve {

struct LineSegment {
  Point from;
  Point to;

  LineSegment(Point a, Point b);
  double length() const { return distance(from, to); }
  Point at(double t) const { return from + t * (to - from); }
};

/// Axis-aligned rectangle with positive width and height.
struct Domain {
  double x_min = -1000.0;
  double x_max = 1000.0;
  double y_min = -1000.0;
  double y_max = 1000.0;

  Domain() = default;
  Domain(double x0, double x1, double y0, double y1);

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  bool contains(Point p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  bool contains(const Triangle& t) const {
    return contains(t.a()) && contains(t.b()) && contains(t.c());
  }

  /// The square [-1000, 1000]^2 used by the vertex sweep.
  static Domain sweep_default() { return {}; }
  /// Square centred on the centroid with half-width `factor` times the
  /// longest side.
  static Domain around(const Triangle& t, double factor);
};

/// Bisection on g along [p0, p1] where g(p0) and g(p1) are on opposite sides
/// of zero (g >= 0 counts as inside). Returns the endpoint of the final
/// bracket with the smaller |g|.
Point bisect_root(const GapField& g, Point p0, Point p1);

/// Every sign change of g along `seg` at resolution `scan_step`, refined by
/// bisection, in parameter order. A non-positive `scan_step` selects
/// length/4096.
std::vector<Point> line_roots(const GapField& g, const LineSegment& seg, double scan_step = 0.0);
std::vector<Point> line_roots(const Triangle& t, const LineSegment& seg, double scan_step = 0.0);

/// Crossings of the curve with the three full side lines. Each line meets
/// the curve once beyond each endpoint of the side:
///   P1 on BC beyond B, P4 on BC beyond C,
///   P2 on AB beyond B, P5 on AB beyond A,
///   P3 on CA beyond C, P6 on CA beyond A.
struct IntersectionSet {
  std::array<std::optional<Point>, 6> points;

  bool complete() const;
  /// Zero-based index of the side line carrying point i (0 = BC, 1 = CA, 2 = AB).
  static int side_of(int i);
  static std::string label(int i) { return "P" + std::to_string(i + 1); }
};

/// `window` is the search distance past each vertex in units of the longest
/// side.
IntersectionSet side_line_intersections(const Triangle& t, double window = 64.0);

/// True iff g < 0 at every sampled point of the domain boundary. A
/// non-positive `boundary_step` selects width/4000.
bool is_closed(const GapField& g, const Domain& dom, double boundary_step = 0.0);
bool is_closed(const Triangle& t, const Domain& dom, double boundary_step = 0.0);

struct Branch {
  std::string label;
  std::vector<Point> points;
  bool closed = false;  // last point joins the first
};

struct TraceOptions {
  int threads = 1;
  Deadline deadline;
};

/// Marching-squares extraction of the zero level of g on a grid of square
/// cells. Edge crossings start from linear interpolation and are then
/// bisected onto the curve. Closed loops keep {g >= 0} on their left.
/// Isolated zeros (the equilateral centre) are not captured.
std::vector<Branch> trace(const GapField& g, const Domain& dom, double cell,
                          const TraceOptions& opts = {});
std::vector<Branch> trace(const Triangle& t, const Domain& dom, double cell,
                          const TraceOptions& opts = {});

class BracketError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// y with g(x, y) = 0 inside (y_lo, y_hi), resolving one branch of the curve
/// as a function of x. When the bracket ends share a sign, a tangential
/// touch (max |g| within 1e-10 of the local scale) is accepted; otherwise
/// BracketError is thrown.
double branch_function(const Triangle& t, double y_lo, double y_hi, double x);

}  // namespace emcurve
