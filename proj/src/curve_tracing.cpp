#include "emcurve/curve_tracing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <unordered_map>

#include <boost/math/tools/minima.hpp>

namespace emcurve {

LineSegment::LineSegment(Point a, Point b) : from(a), to(b) {
  if (a == b) throw GeometryError("line segment endpoints must differ");
}

Domain::Domain(double x0, double x1, double y0, double y1)
    : x_min(x0), x_max(x1), y_min(y0), y_max(y1) {
  if (!(x1 > x0) || !(y1 > y0)) throw GeometryError("domain must have positive width and height");
}

Domain Domain::around(const Triangle& t, double factor) {
  const Point c = t.centroid();
  const double h = factor * t.longest_side();
  return {c.x - h, c.x + h, c.y - h, c.y + h};
}

Point bisect_root(const GapField& g, Point p0, Point p1) {
  const bool in0 = g(p0) >= 0.0;
  for (int it = 0; it < 200; ++it) {
    const Point mid = 0.5 * (p0 + p1);
    if (mid == p0 || mid == p1) break;
    if ((g(mid) >= 0.0) == in0) {
      p0 = mid;
    } else {
      p1 = mid;
    }
  }
  return std::abs(g(p0)) <= std::abs(g(p1)) ? p0 : p1;
}

std::vector<Point> line_roots(const GapField& g, const LineSegment& seg, double scan_step) {
  const double len = seg.length();
  if (!(scan_step > 0.0)) scan_step = len / 4096.0;
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(len / scan_step - 1e-9)));

  std::vector<Point> roots;
  Point prev = seg.from;
  bool prev_in = g(prev) >= 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const Point cur = k == n ? seg.to : seg.at(static_cast<double>(k) / static_cast<double>(n));
    const bool cur_in = g(cur) >= 0.0;
    if (cur_in != prev_in) roots.push_back(bisect_root(g, prev, cur));
    prev = cur;
    prev_in = cur_in;
  }
  return roots;
}

std::vector<Point> line_roots(const Triangle& t, const LineSegment& seg, double scan_step) {
  return line_roots(GapField(t), seg, scan_step);
}

bool IntersectionSet::complete() const {
  return std::all_of(points.begin(), points.end(), [](const auto& p) { return p.has_value(); });
}

int IntersectionSet::side_of(int i) {
  static constexpr std::array<int, 6> sides{0, 2, 1, 0, 2, 1};
  return sides[static_cast<std::size_t>(i)];
}

IntersectionSet side_line_intersections(const Triangle& t, double window) {
  const GapField g(t);
  const double reach = window * t.longest_side();
  const double step = t.longest_side() / 256.0;

  // First crossing on the ray leaving `from` in the direction away from `other`.
  auto first_root = [&](Point from, Point other) -> std::optional<Point> {
    const Point d = from - other;
    const double len = norm(d);
    const LineSegment ray(from, from + (reach / len) * d);
    const auto roots = line_roots(g, ray, step);
    if (roots.empty()) return std::nullopt;
    return roots.front();
  };

  IntersectionSet out;
  out.points[0] = first_root(t.b(), t.c());
  out.points[1] = first_root(t.b(), t.a());
  out.points[2] = first_root(t.c(), t.a());
  out.points[3] = first_root(t.c(), t.b());
  out.points[4] = first_root(t.a(), t.b());
  out.points[5] = first_root(t.a(), t.c());
  return out;
}

bool is_closed(const GapField& g, const Domain& dom, double boundary_step) {
  if (!(boundary_step > 0.0)) boundary_step = dom.width() / 4000.0;
  const auto nx = static_cast<long>(std::ceil(dom.width() / boundary_step - 1e-9));
  const auto ny = static_cast<long>(std::ceil(dom.height() / boundary_step - 1e-9));
  for (long k = 0; k <= nx; ++k) {
    const double x = k == nx ? dom.x_max : dom.x_min + static_cast<double>(k) * boundary_step;
    if (g(x, dom.y_min) >= 0.0 || g(x, dom.y_max) >= 0.0) return false;
  }
  for (long k = 0; k <= ny; ++k) {
    const double y = k == ny ? dom.y_max : dom.y_min + static_cast<double>(k) * boundary_step;
    if (g(dom.x_min, y) >= 0.0 || g(dom.x_max, y) >= 0.0) return false;
  }
  return true;
}

bool is_closed(const Triangle& t, const Domain& dom, double boundary_step) {
  return is_closed(GapField(t), dom, boundary_step);
}

namespace {

struct Segment {
  std::size_t from_edge;
  std::size_t to_edge;
};

class Tracer {
public:
  Tracer(const GapField& g, const Domain& dom, double cell, const TraceOptions& opts)
      : g_(g), dom_(dom), h_(cell), opts_(opts) {
    nx_ = static_cast<std::size_t>(std::ceil(dom.width() / cell - 1e-9));
    ny_ = static_cast<std::size_t>(std::ceil(dom.height() / cell - 1e-9));
  }

  std::vector<Branch> run() {
    sample_nodes();
    collect_segments();
    return link();
  }

private:
  double node_x(std::size_t i) const { return dom_.x_min + static_cast<double>(i) * h_; }
  double node_y(std::size_t j) const { return dom_.y_min + static_cast<double>(j) * h_; }
  std::size_t node(std::size_t i, std::size_t j) const { return j * (nx_ + 1) + i; }
  bool inside(std::size_t i, std::size_t j) const { return values_[node(i, j)] >= 0.0; }

  // Horizontal edge (i,j)-(i+1,j) is 2*node(i,j); vertical (i,j)-(i,j+1) is 2*node(i,j)+1.
  std::size_t h_edge(std::size_t i, std::size_t j) const { return 2 * node(i, j); }
  std::size_t v_edge(std::size_t i, std::size_t j) const { return 2 * node(i, j) + 1; }

  std::pair<std::size_t, std::size_t> edge_nodes(std::size_t edge) const {
    const std::size_t n = edge / 2;
    const std::size_t i = n % (nx_ + 1), j = n / (nx_ + 1);
    if (edge % 2 == 0) return {node(i, j), node(i + 1, j)};
    return {node(i, j), node(i, j + 1)};
  }

  Point node_point(std::size_t n) const { return {node_x(n % (nx_ + 1)), node_y(n / (nx_ + 1))}; }

  void sample_nodes() {
    values_.assign((nx_ + 1) * (ny_ + 1), 0.0);
    parallel_for(ny_ + 1, opts_.threads, [&](std::size_t j) {
      opts_.deadline.check();
      const double y = node_y(j);
      for (std::size_t i = 0; i <= nx_; ++i) values_[node(i, j)] = g_(node_x(i), y);
    });
  }

  Point crossing(std::size_t edge) {
    if (auto it = crossings_.find(edge); it != crossings_.end()) return it->second;
    const auto [na, nb] = edge_nodes(edge);
    const Point pa = node_point(na), pb = node_point(nb);
    const Point p = bisect_root(g_, pa, pb);
    crossings_.emplace(edge, p);
    return p;
  }

  // Orients the segment so the inside corner of its first edge lies on the left.
  void emit(std::size_t e1, std::size_t e2) {
    const auto [na, nb] = edge_nodes(e1);
    const Point inner = values_[na] >= 0.0 ? node_point(na) : node_point(nb);
    const Point p1 = crossing(e1), p2 = crossing(e2);
    double side = cross(p2 - p1, inner - p1);
    if (side == 0.0) {
      // Crossing sits on a node; fall back to the other edge's inside corner.
      const auto [ma, mb] = edge_nodes(e2);
      const Point inner2 = values_[ma] >= 0.0 ? node_point(ma) : node_point(mb);
      side = cross(p2 - p1, inner2 - p1);
    }
    if (side >= 0.0) {
      segments_.push_back({e1, e2});
    } else {
      segments_.push_back({e2, e1});
    }
  }

  void collect_segments() {
    for (std::size_t j = 0; j < ny_; ++j) {
      if (j % 64 == 0) opts_.deadline.check();
      for (std::size_t i = 0; i < nx_; ++i) {
        // Corners counter-clockwise from lower-left; edges bottom, right, top, left.
        const std::array<bool, 4> in{inside(i, j), inside(i + 1, j), inside(i + 1, j + 1),
                                     inside(i, j + 1)};
        const int mask = in[0] | in[1] << 1 | in[2] << 2 | in[3] << 3;
        if (mask == 0 || mask == 15) continue;
        const std::array<std::size_t, 4> edge{h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1),
                                              v_edge(i, j)};
        if (mask == 5 || mask == 10) {
          const bool centre_in =
              g_(node_x(i) + 0.5 * h_, node_y(j) + 0.5 * h_) >= 0.0;
          // Cut off each corner whose state differs from the centre.
          // Corner k touches edges k-1 (mod 4) and k.
          for (int k = 0; k < 4; ++k) {
            if (in[static_cast<std::size_t>(k)] != centre_in) {
              emit(edge[static_cast<std::size_t>((k + 3) % 4)], edge[static_cast<std::size_t>(k)]);
            }
          }
          continue;
        }
        std::array<std::size_t, 2> cut{};
        int n = 0;
        for (int k = 0; k < 4; ++k) {
          if (in[static_cast<std::size_t>(k)] != in[static_cast<std::size_t>((k + 1) % 4)]) {
            cut[static_cast<std::size_t>(n++)] = edge[static_cast<std::size_t>(k)];
          }
        }
        emit(cut[0], cut[1]);
      }
    }
  }

  std::vector<Branch> link() {
    std::unordered_map<std::size_t, std::size_t> by_start;
    std::unordered_map<std::size_t, int> incoming;
    by_start.reserve(segments_.size());
    for (std::size_t s = 0; s < segments_.size(); ++s) {
      by_start.emplace(segments_[s].from_edge, s);
      ++incoming[segments_[s].to_edge];
    }

    std::vector<bool> used(segments_.size(), false);
    std::vector<Branch> out;
    auto walk = [&](std::size_t s) {
      Branch b;
      const std::size_t start_edge = segments_[s].from_edge;
      b.points.push_back(crossing(start_edge));
      for (;;) {
        used[s] = true;
        const std::size_t next_edge = segments_[s].to_edge;
        if (next_edge == start_edge) {
          b.closed = true;
          break;
        }
        b.points.push_back(crossing(next_edge));
        auto it = by_start.find(next_edge);
        if (it == by_start.end() || used[it->second]) break;
        s = it->second;
      }
      b.label = "C" + std::to_string(out.size() + 1);
      out.push_back(std::move(b));
    };

    // Open branches first start where nothing flows in, then the loops.
    for (std::size_t s = 0; s < segments_.size(); ++s) {
      if (!used[s] && incoming.find(segments_[s].from_edge) == incoming.end()) walk(s);
    }
    for (std::size_t s = 0; s < segments_.size(); ++s) {
      if (!used[s]) walk(s);
    }
    return out;
  }

  const GapField& g_;
  Domain dom_;
  double h_;
  TraceOptions opts_;
  std::size_t nx_ = 0, ny_ = 0;
  std::vector<double> values_;
  std::vector<Segment> segments_;
  std::map<std::size_t, Point> crossings_;
};

}  // namespace

std::vector<Branch> trace(const GapField& g, const Domain& dom, double cell,
                          const TraceOptions& opts) {
  if (!(cell > 0.0)) throw std::invalid_argument("trace cell size must be positive");
  return Tracer(g, dom, cell, opts).run();
}

std::vector<Branch> trace(const Triangle& t, const Domain& dom, double cell,
                          const TraceOptions& opts) {
  return trace(GapField(t), dom, cell, opts);
}

double branch_function(const Triangle& t, double y_lo, double y_hi, double x) {
  const GapField g(t);
  const Point lo{x, y_lo}, hi{x, y_hi};
  const double g_lo = g(lo), g_hi = g(hi);
  if ((g_lo >= 0.0) != (g_hi >= 0.0)) return bisect_root(g, lo, hi).y;

  // Same sign at both ends: accept only a tangential touch of the zero level.
  const double sign = g_lo >= 0.0 ? 1.0 : -1.0;
  auto f = [&](double y) { return sign * g(x, y); };
  std::uintmax_t max_iter = 200;
  const auto [y_best, v_best] = boost::math::tools::brent_find_minima(
      f, y_lo, y_hi, std::numeric_limits<double>::digits / 2, max_iter);
  const double tol = 1e-10 * g.local_scale({x, y_best});
  if (std::abs(v_best) <= tol) return y_best;
  // Brent stops at sqrt(eps) in y, too coarse for the kinks on side lines.
  for (const SideLine* l : {&g.line_a(), &g.line_b(), &g.line_c()}) {
    if (l->b == 0.0) continue;
    const double y = -(l->a * x + l->c) / l->b;
    if (y < y_lo || y > y_hi) continue;
    if (std::abs(g(x, y)) <= 1e-10 * g.local_scale({x, y})) return y;
  }
  throw BracketError("bracket does not straddle a branch of the curve at x = " +
                     std::to_string(x));
}

}  // namespace emcurve
