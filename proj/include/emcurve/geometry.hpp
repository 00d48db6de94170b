#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace emcurve {

class GeometryError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::sqrt(a.x * a.x + a.y * a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

/// Rejects triangles whose doubled area is below this fraction of the
/// squared longest side.
inline constexpr double kDegenerateRatio = 1e-9;

/// Non-degenerate triangle with vertices stored counter-clockwise.
///
/// If the input order is clockwise, B and C are exchanged so that A keeps
/// its identity; `swapped()` reports whether that happened.
class Triangle {
public:
  Triangle(Point a, Point b, Point c);

  const Point& a() const { return v_[0]; }
  const Point& b() const { return v_[1]; }
  const Point& c() const { return v_[2]; }
  const Point& vertex(int i) const { return v_[static_cast<std::size_t>(i)]; }
  bool swapped() const { return swapped_; }

  /// Twice the (positive) area.
  double twice_area() const;
  double area() const { return 0.5 * twice_area(); }
  double longest_side() const;
  double perimeter() const;
  Point centroid() const;
  /// Strict interior test (boundary counts as inside within `tol`).
  bool contains(Point m, double tol = 0.0) const;

private:
  std::array<Point, 3> v_;
  bool swapped_ = false;
};

struct SideLengths {
  double a = 0.0;  // |BC|
  double b = 0.0;  // |CA|
  double c = 0.0;  // |AB|
};

SideLengths side_lengths(const Triangle& t);

/// Orthogonal map x' = R (x - origin); `reflection` is true when det R = -1.
struct Isometry {
  std::array<double, 4> rot{1.0, 0.0, 0.0, 1.0};  // row-major
  Point origin{};
  bool reflection = false;

  Point apply(Point p) const;
  Point inverse(Point p) const;
};

/// Rigid placement with A = (0, r), B = (p, 0), C = (q, 0), p < q, r > 0.
struct CanonicalPlacement {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
  Isometry isometry;

  Triangle triangle() const;
};

CanonicalPlacement canonicalize(const Triangle& t);

/// Normalised line a*x + b*y + c = 0 with a^2 + b^2 = 1 and positive on the
/// side of the opposite vertex.
struct SideLine {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double signed_distance(Point m) const { return a * m.x + b * m.y + c; }
  double distance(Point m) const { return std::abs(signed_distance(m)); }
};

/// Line through p and q, oriented positive towards `inside`.
SideLine side_line(Point p, Point q, Point inside);

struct DistanceSet {
  double RA = 0.0, RB = 0.0, RC = 0.0;  // to vertices
  double ra = 0.0, rb = 0.0, rc = 0.0;  // to side lines BC, CA, AB
};

/// Precomputed evaluator for the six distances and the gap
/// g = R_A + R_B + R_C - 2 (r_a + r_b + r_c).
///
/// The sums are grouped as R_A + (R_B + R_C) and r_a + (r_b + r_c), and each
/// line is built from its two endpoints in a fixed order, so mirroring the
/// frame across the perpendicular bisector of BC leaves every value
/// bit-for-bit unchanged.
class GapField {
public:
  explicit GapField(const Triangle& t);

  const Triangle& triangle() const { return tri_; }
  const SideLine& line_a() const { return lines_[0]; }
  const SideLine& line_b() const { return lines_[1]; }
  const SideLine& line_c() const { return lines_[2]; }

  DistanceSet distances(Point m) const;

  double operator()(double x, double y) const {
    const double ax = x - tri_.a().x, ay = y - tri_.a().y;
    const double bx = x - tri_.b().x, by = y - tri_.b().y;
    const double cx = x - tri_.c().x, cy = y - tri_.c().y;
    const double ra = std::sqrt(ax * ax + ay * ay);
    const double rbc = std::sqrt(bx * bx + by * by) + std::sqrt(cx * cx + cy * cy);
    const double la = std::abs(lines_[0].a * x + lines_[0].b * y + lines_[0].c);
    const double lbc = std::abs(lines_[1].a * x + lines_[1].b * y + lines_[1].c) +
                       std::abs(lines_[2].a * x + lines_[2].b * y + lines_[2].c);
    return (ra + rbc) - 2.0 * (la + lbc);
  }
  double operator()(Point m) const { return (*this)(m.x, m.y); }

  /// Length scale used for default tolerances at `m`.
  double local_scale(Point m) const;

private:
  Triangle tri_;
  std::array<SideLine, 3> lines_;
};

DistanceSet distances(const Triangle& t, Point m);
double em_gap(const Triangle& t, Point m);

struct CornerMembership {
  bool in_EA = false;
  bool in_EB = false;
  bool in_EC = false;
  bool in_E = false;
};

/// Corner-area predicates a R_A >= c r_b + b r_c (and cyclic); in_E is their
/// conjunction. `tol` defaults to 1e-9 times the local scale.
CornerMembership corner_membership(const Triangle& t, Point m,
                                   std::optional<double> tol = std::nullopt);

/// The weighted inequality summed over the three corners, evaluated directly.
bool weighted_inequality_holds(const Triangle& t, Point m,
                               std::optional<double> tol = std::nullopt);

std::string to_string(const Triangle& t);

}  // namespace emcurve
