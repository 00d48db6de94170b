#include "emcurve/area_epsilon.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/tools/minima.hpp>

namespace emcurve {

std::string to_string(EpsilonMethod m) { return m == EpsilonMethod::pixel ? "pixel" : "scanline"; }

EpsilonMethod parse_epsilon_method(const std::string& text) {
  if (text == "pixel") return EpsilonMethod::pixel;
  if (text == "scanline") return EpsilonMethod::scanline;
  throw std::invalid_argument("unknown epsilon method: " + text);
}

PixelGridSpec::PixelGridSpec(Domain dom, double pixel_step) : domain(dom), step(pixel_step) {
  if (!(pixel_step > 0.0)) throw std::invalid_argument("pixel step must be positive");
}

std::size_t PixelGridSpec::columns() const {
  return static_cast<std::size_t>(std::ceil(domain.width() / step - 1e-9));
}

std::size_t PixelGridSpec::rows() const {
  return static_cast<std::size_t>(std::ceil(domain.height() / step - 1e-9));
}

std::uint64_t count_inside_pixels(const GapField& g, const PixelGridSpec& grid, int threads) {
  const std::size_t nx = grid.columns(), ny = grid.rows();
  std::vector<std::uint64_t> per_row(ny, 0);
  parallel_for(ny, threads, [&](std::size_t j) {
    const double y = grid.center_y(j);
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < nx; ++i) n += g(grid.center_x(i), y) >= 0.0 ? 1u : 0u;
    per_row[j] = n;
  });
  std::uint64_t total = 0;
  for (auto n : per_row) total += n;
  return total;
}

EpsilonResult epsilon_pixel(const Triangle& t, const PixelGridSpec& grid, int threads) {
  const GapField g(t);
  EpsilonResult out;
  out.method = EpsilonMethod::pixel;
  out.area_triangle = t.area();
  out.closed = is_closed(g, grid.domain);
  const std::uint64_t inside = count_inside_pixels(g, grid, threads);
  out.evaluations = static_cast<std::uint64_t>(grid.columns()) * grid.rows();
  out.area_curve = static_cast<double>(inside) * grid.step * grid.step;
  if (out.closed) out.epsilon = (out.area_curve - out.area_triangle) / out.area_triangle;
  return out;
}

namespace {

using Interval = std::pair<double, double>;

// Minimum of a convex function on [a, b]; returns (argmin, value).
template <class F>
std::pair<double, double> convex_min(F f, double a, double b) {
  std::uintmax_t iters = 200;
  return boost::math::tools::brent_find_minima(f, a, b, std::numeric_limits<double>::digits, iters);
}

// Between the points where a column crosses a side line, g is convex in y:
// the vertex distances are convex and the side distances are linear there.
// So each piece holds at most one gap in {g >= 0}, found from its minimum.
class ColumnScanner {
public:
  explicit ColumnScanner(const GapField& g) : g_(g) {}

  double measure(double x, double lo, double hi) const {
    if (!(hi > lo)) return 0.0;
    const auto ys = pieces(x, lo, hi);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
      const double a = ys[k], b = ys[k + 1];
      const bool in_a = g_(x, a) >= 0.0, in_b = g_(x, b) >= 0.0;
      if (!in_a && !in_b) continue;
      if (in_a != in_b) {
        const double r = root(x, a, b);
        total += in_a ? r - a : b - r;
        continue;
      }
      const auto [y, v] = convex_min([&](double yy) { return g_(x, yy); }, a, b);
      total += v >= 0.0 ? b - a : (root(x, a, y) - a) + (b - root(x, y, b));
    }
    return total;
  }

  // Convexity puts the maximum on a piece end.
  double column_max(double x, double lo, double hi) const {
    double best = -std::numeric_limits<double>::infinity();
    if (!(hi >= lo)) return best;
    for (double y : pieces(x, lo, hi)) best = std::max(best, g_(x, y));
    return best;
  }

private:
  std::vector<double> pieces(double x, double lo, double hi) const {
    std::vector<double> ys{lo};
    for (const SideLine* l : {&g_.line_a(), &g_.line_b(), &g_.line_c()}) {
      if (l->b == 0.0) continue;
      const double y = -(l->a * x + l->c) / l->b;
      if (y > lo && y < hi) ys.push_back(y);
    }
    ys.push_back(hi);
    std::sort(ys.begin() + 1, ys.end() - 1);
    return ys;
  }

  double root(double x, double a, double b) const { return bisect_root(g_, {x, a}, {x, b}).y; }

  const GapField& g_;
};

// Clips a convex polygon to {l >= 0}.
std::vector<Point> clip(const std::vector<Point>& poly, const SideLine& l) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point p = poly[i], q = poly[(i + 1) % poly.size()];
    const double dp = l.signed_distance(p), dq = l.signed_distance(q);
    if (dp >= 0.0) out.push_back(p);
    if ((dp >= 0.0) != (dq >= 0.0)) out.push_back(p + (dp / (dp - dq)) * (q - p));
  }
  return out;
}

// Abscissae where the column length stops being smooth inside the domain:
// the vertices, the curve's corners on the side lines, and the vertical
// tangents. The side lines cut the plane into seven cells, g is convex on
// each, so {g < 0} meets a cell in a convex set whose x-extent comes from
// the convex function m(x) = min of g over the cell's column at x.
std::vector<double> kink_abscissae(const GapField& g, const Domain& dom) {
  const Triangle& t = g.triangle();
  std::vector<double> xs{t.a().x, t.b().x, t.c().x};
  for (const auto& p : side_line_intersections(t).points) {
    if (p) xs.push_back(p->x);
  }
  const SideLine lines[3] = {g.line_a(), g.line_b(), g.line_c()};
  const double floor = -1e-12 * t.perimeter();
  for (int mask = 0; mask < 7; ++mask) {
    SideLine cell[3];
    std::vector<Point> poly{{dom.x_min, dom.y_min}, {dom.x_max, dom.y_min}, {dom.x_max, dom.y_max},
                            {dom.x_min, dom.y_max}};
    for (int i = 0; i < 3; ++i) {
      const double s = (mask >> i) & 1 ? -1.0 : 1.0;
      cell[i] = {s * lines[i].a, s * lines[i].b, s * lines[i].c};
      poly = clip(poly, cell[i]);
    }
    if (poly.size() < 3) continue;
    double x0 = poly[0].x, x1 = poly[0].x;
    for (const Point& p : poly) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
    }
    if (!(x1 > x0)) continue;

    auto column = [&](double x) {
      Interval iv{dom.y_min, dom.y_max};
      for (const SideLine& l : cell) {
        if (l.b > 0.0) iv.first = std::max(iv.first, -(l.a * x + l.c) / l.b);
        if (l.b < 0.0) iv.second = std::min(iv.second, -(l.a * x + l.c) / l.b);
      }
      iv.second = std::max(iv.first, iv.second);
      return iv;
    };
    auto m = [&](double x) {
      const auto [lo, hi] = column(x);
      if (!(hi > lo)) return g(x, lo);
      return convex_min([&](double y) { return g(x, y); }, lo, hi).second;
    };
    auto boundary = [&](double in, double out) {
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (in + out);
        if (mid == in || mid == out) break;
        (m(mid) < 0.0 ? in : out) = mid;
      }
      return in;
    };

    const auto [xm, vm] = convex_min(m, x0, x1);
    if (!(vm < floor)) continue;
    if (m(x0) >= 0.0) xs.push_back(boundary(xm, x0));
    if (m(x1) >= 0.0) xs.push_back(boundary(xm, x1));
  }
  return xs;
}

struct ColumnRegion {
  std::function<double(double)> y_lo;
  std::function<double(double)> y_hi;
};

// Boundary of {x : column has a point with g >= 0} between x_in (known
// inside) and x_out; returns x_out if the whole range is inside.
double find_extent(const ColumnScanner& scan, const ColumnRegion& region, double x_in,
                   double x_out) {
  auto hit = [&](double x) { return scan.column_max(x, region.y_lo(x), region.y_hi(x)) >= 0.0; };
  if (hit(x_out)) return x_out;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (x_in + x_out);
    if (mid == x_in || mid == x_out) break;
    (hit(mid) ? x_in : x_out) = mid;
  }
  return x_in;
}

struct Quadrature {
  double area = 0.0;
  double error = 0.0;
  std::uint64_t columns = 0;
};

// Best-first adaptive Simpson over [x_lo, x_hi] split at `breaks`. Each
// piece is mapped from t in [0, 1] through x = a + (b - a) t^2 (3 - 2t), which
// removes square-root behaviour of the column length at the piece ends.
// A panel's error is the Richardson estimate |S_fine - S_coarse| / 15.
Quadrature integrate_columns(const ColumnScanner& scan, const ColumnRegion& region, double x_lo,
                             double x_hi, std::vector<double> breaks, double target,
                             const ScanlineOptions& opts) {
  breaks.push_back(x_lo);
  breaks.push_back(x_hi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                              [&](double b) { return b < x_lo || b > x_hi; }),
               breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  Quadrature q;
  struct Panel {
    std::size_t piece;
    double a, b;
    double fa, flm, fm, frm, fb;
    double value, err;
  };
  std::vector<Panel> panels;

  auto integrand = [&](std::size_t piece, double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double xa = breaks[piece], xb = breaks[piece + 1];
    const double x = xa + (xb - xa) * t * t * (3.0 - 2.0 * t);
    const double w = (xb - xa) * 6.0 * t * (1.0 - t);
    ++q.columns;
    if (q.columns % 64 == 0) opts.deadline.check();
    return w * scan.measure(x, region.y_lo(x), region.y_hi(x));
  };

  auto finish = [](Panel& p) {
    const double h = p.b - p.a;
    const double coarse = h / 6.0 * (p.fa + 4.0 * p.fm + p.fb);
    const double fine = h / 12.0 * (p.fa + 4.0 * p.flm + 2.0 * p.fm + 4.0 * p.frm + p.fb);
    p.value = fine + (fine - coarse) / 15.0;
    p.err = std::abs(fine - coarse) / 15.0;
  };

  auto make = [&](std::size_t piece, double a, double b, double fa, double fm, double fb) {
    Panel p{piece, a, b, fa, 0.0, fm, 0.0, fb, 0.0, 0.0};
    p.flm = integrand(piece, 0.75 * a + 0.25 * b);
    p.frm = integrand(piece, 0.25 * a + 0.75 * b);
    finish(p);
    return p;
  };

  constexpr int kInitialPanels = 8;
  for (std::size_t piece = 0; piece + 1 < breaks.size(); ++piece) {
    std::vector<double> f(2 * kInitialPanels + 1);
    for (int k = 0; k <= 2 * kInitialPanels; ++k) {
      f[static_cast<std::size_t>(k)] = integrand(piece, k / (2.0 * kInitialPanels));
    }
    for (int k = 0; k < kInitialPanels; ++k) {
      const double a = static_cast<double>(k) / kInitialPanels;
      const double b = static_cast<double>(k + 1) / kInitialPanels;
      const auto i = static_cast<std::size_t>(2 * k);
      panels.push_back(make(piece, a, b, f[i], f[i + 1], f[i + 2]));
    }
  }

  auto worse = [&](std::size_t l, std::size_t r) { return panels[l].err < panels[r].err; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);
  double total_err = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    queue.push(i);
    total_err += panels[i].err;
  }

  while (total_err > target && !queue.empty()) {
    if (q.columns >= opts.max_columns) break;
    const std::size_t worst = queue.top();
    queue.pop();
    const Panel p = panels[worst];
    const double m = 0.5 * (p.a + p.b);
    if (m <= p.a || m >= p.b) continue;  // cannot split further; keep its error
    panels[worst] = make(p.piece, p.a, m, p.fa, p.flm, p.fm);
    panels.push_back(make(p.piece, m, p.b, p.fm, p.frm, p.fb));
    queue.push(worst);
    queue.push(panels.size() - 1);
    total_err += panels[worst].err + panels.back().err - p.err;
  }

  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) {
    return l.piece != r.piece ? l.piece < r.piece : l.a < r.a;
  });
  double sum = 0.0, comp = 0.0, err = 0.0;
  for (const Panel& p : panels) {
    const double t = sum + p.value;
    comp += std::abs(sum) >= std::abs(p.value) ? (sum - t) + p.value : (p.value - t) + sum;
    sum = t;
    err += p.err;
  }
  q.area = sum + comp;
  q.error = err;
  if (err > target) {
    throw ConvergenceError("scanline integration did not reach the requested tolerance", q.area,
                           q.error);
  }
  return q;
}

}  // namespace

EpsilonResult epsilon_scanline(const Triangle& t, const Domain& dom, double tol,
                               const ScanlineOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("scanline tolerance must be positive");
  const GapField g(t);
  if (!is_closed(g, dom)) throw OpenCurveError("curve is not closed in the integration domain");

  const ColumnScanner scan(g);
  const ColumnRegion region{[&](double) { return dom.y_min; }, [&](double) { return dom.y_max; }};
  const double x_in = t.centroid().x;
  const double x_left = find_extent(scan, region, x_in, dom.x_min);
  const double x_right = find_extent(scan, region, x_in, dom.x_max);

  const double target = tol * t.area();
  const Quadrature q =
      integrate_columns(scan, region, x_left, x_right, kink_abscissae(g, dom), target, opts);
  EpsilonResult out;
  out.method = EpsilonMethod::scanline;
  out.closed = true;
  out.area_curve = q.area;
  out.area_triangle = t.area();
  out.epsilon = (q.area - out.area_triangle) / out.area_triangle;
  out.error_estimate = q.error;
  out.evaluations = q.columns;
  return out;
}

double epsilon0_equilateral(double tol) {
  if (!(tol >= 1e-9)) throw std::invalid_argument("epsilon0 tolerance must be at least 1e-9");
  const double s3 = std::sqrt(3.0);
  const Triangle t({0.0, s3}, {-1.0, 0.0}, {1.0, 0.0});
  const GapField g(t);
  const ColumnScanner scan(g);

  // The sextant x >= 0, y <= y_centre - x / sqrt(3): the wedge at the centre
  // between the downward ray and the ray through C.
  const double y_centre = s3 / 3.0;
  const ColumnRegion region{[](double) { return -3.0; },
                            [=](double x) { return y_centre - x / s3; }};
  const double x_right = find_extent(scan, region, 0.5, 3.0);

  // Six sextants; the area error bound maps to epsilon through 6 / sqrt(3).
  const double target = 0.5 * tol * s3 / 6.0;
  // The clipping line adds a kink where the curve crosses it beyond C.
  std::vector<double> breaks = kink_abscissae(g, Domain(-3.0, 3.0, -3.0, 3.0));
  for (const Point& p : line_roots(g, LineSegment({1.0, 0.0}, {3.0, -2.0 / s3}))) breaks.push_back(p.x);
  const Quadrature q =
      integrate_columns(scan, region, 0.0, x_right, breaks, target, ScanlineOptions{});
  const double area = 6.0 * q.area;
  return (area - t.area()) / t.area();
}

}  // namespace emcurve
