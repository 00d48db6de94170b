#include "emcurve/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace emcurve {

namespace {

bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double twice_signed_area(Point a, Point b, Point c) { return cross(b - a, c - a); }

}  // namespace

Triangle::Triangle(Point a, Point b, Point c) : v_{a, b, c} {
  if (!finite(a) || !finite(b) || !finite(c)) {
    throw GeometryError("triangle vertices must be finite");
  }
  const double ta = twice_signed_area(a, b, c);
  const double longest = longest_side();
  if (!(std::abs(ta) > kDegenerateRatio * longest * longest)) {
    throw GeometryError("degenerate triangle: " + to_string(*this));
  }
  if (ta < 0.0) {
    std::swap(v_[1], v_[2]);
    swapped_ = true;
  }
}

double Triangle::twice_area() const { return std::abs(twice_signed_area(v_[0], v_[1], v_[2])); }

double Triangle::longest_side() const {
  return std::max({distance(v_[1], v_[2]), distance(v_[2], v_[0]), distance(v_[0], v_[1])});
}

double Triangle::perimeter() const {
  return distance(v_[1], v_[2]) + distance(v_[2], v_[0]) + distance(v_[0], v_[1]);
}

Point Triangle::centroid() const {
  return {(v_[0].x + v_[1].x + v_[2].x) / 3.0, (v_[0].y + v_[1].y + v_[2].y) / 3.0};
}

bool Triangle::contains(Point m, double tol) const {
  // Counter-clockwise storage: inside means left of every directed edge.
  for (int i = 0; i < 3; ++i) {
    const Point p = vertex(i);
    const Point q = vertex((i + 1) % 3);
    const double len = distance(p, q);
    if (cross(q - p, m - p) / len < -tol) return false;
  }
  return true;
}

SideLengths side_lengths(const Triangle& t) {
  return {distance(t.b(), t.c()), distance(t.c(), t.a()), distance(t.a(), t.b())};
}

Point Isometry::apply(Point p) const {
  const Point d = p - origin;
  return {rot[0] * d.x + rot[1] * d.y, rot[2] * d.x + rot[3] * d.y};
}

Point Isometry::inverse(Point p) const {
  return Point{rot[0] * p.x + rot[2] * p.y, rot[1] * p.x + rot[3] * p.y} + origin;
}

Triangle CanonicalPlacement::triangle() const { return Triangle({0.0, r}, {p, 0.0}, {q, 0.0}); }

CanonicalPlacement canonicalize(const Triangle& t) {
  const Point bc = t.c() - t.b();
  const double len = norm(bc);
  const Point e{bc.x / len, bc.y / len};
  const Point n{-e.y, e.x};
  const Point ab = t.a() - t.b();
  const double foot = dot(ab, e);

  CanonicalPlacement cp;
  cp.p = -foot;
  cp.q = len - foot;
  cp.r = dot(ab, n);
  cp.isometry.rot = {e.x, e.y, n.x, n.y};
  cp.isometry.origin = t.b() + foot * e;
  cp.isometry.reflection = false;
  return cp;
}

SideLine side_line(Point p, Point q, Point inside) {
  double a = p.y - q.y;
  double b = q.x - p.x;
  double c = p.x * q.y - q.x * p.y;
  const double n = std::sqrt(a * a + b * b);
  a /= n;
  b /= n;
  c /= n;
  SideLine line{a, b, c};
  if (line.signed_distance(inside) < 0.0) line = {-a, -b, -c};
  return line;
}

GapField::GapField(const Triangle& t)
    : tri_(t),
      lines_{side_line(t.b(), t.c(), t.a()), side_line(t.c(), t.a(), t.b()),
             side_line(t.a(), t.b(), t.c())} {}

DistanceSet GapField::distances(Point m) const {
  DistanceSet d;
  d.RA = distance(m, tri_.a());
  d.RB = distance(m, tri_.b());
  d.RC = distance(m, tri_.c());
  d.ra = lines_[0].distance(m);
  d.rb = lines_[1].distance(m);
  d.rc = lines_[2].distance(m);
  return d;
}

double GapField::local_scale(Point m) const {
  return tri_.longest_side() + distance(m, tri_.centroid());
}

DistanceSet distances(const Triangle& t, Point m) { return GapField(t).distances(m); }

double em_gap(const Triangle& t, Point m) { return GapField(t)(m); }

CornerMembership corner_membership(const Triangle& t, Point m, std::optional<double> tol) {
  const GapField field(t);
  const double eps = tol.value_or(1e-9 * field.local_scale(m));
  const DistanceSet d = field.distances(m);
  const SideLengths s = side_lengths(t);

  CornerMembership out;
  out.in_EA = d.RA - (s.c / s.a * d.rb + s.b / s.a * d.rc) >= -eps;
  out.in_EB = d.RB - (s.c / s.b * d.ra + s.a / s.b * d.rc) >= -eps;
  out.in_EC = d.RC - (s.b / s.c * d.ra + s.a / s.c * d.rb) >= -eps;
  out.in_E = out.in_EA && out.in_EB && out.in_EC;
  return out;
}

bool weighted_inequality_holds(const Triangle& t, Point m, std::optional<double> tol) {
  const GapField field(t);
  const double eps = tol.value_or(1e-9 * field.local_scale(m));
  const DistanceSet d = field.distances(m);
  const SideLengths s = side_lengths(t);
  const double rhs = (s.c / s.b + s.b / s.c) * d.ra + (s.c / s.a + s.a / s.c) * d.rb +
                     (s.a / s.b + s.b / s.a) * d.rc;
  return d.RA + d.RB + d.RC - rhs >= -eps;
}

std::string to_string(const Triangle& t) {
  std::ostringstream os;
  os.precision(17);
  os << "A(" << t.a().x << ", " << t.a().y << ") B(" << t.b().x << ", " << t.b().y << ") C("
     << t.c().x << ", " << t.c().y << ")";
  return os.str();
}

}  // namespace emcurve
