#include <doctest.h>

#include <cmath>
#include <random>
#include <utility>

#include "common/oracles.hpp"
#include "emcurve/geometry.hpp"

using namespace emcurve;

namespace {

const double s3 = std::sqrt(3.0);

Triangle equilateral() { return Triangle({0, s3}, {-1, 0}, {1, 0}); }

bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("side lengths") {
  const auto e = side_lengths(equilateral());
  CHECK(e.a == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(e.b == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(e.c == doctest::Approx(2.0).epsilon(1e-15));

  const auto big = side_lengths(Triangle({0, 100 * s3}, {-100, 0}, {100, 0}));
  CHECK(big.a == doctest::Approx(200.0));
  CHECK(big.b == doctest::Approx(200.0));
  CHECK(big.c == doctest::Approx(200.0));
}

TEST_CASE("degenerate triangles are rejected") {
  CHECK_THROWS_AS(Triangle({0, 3}, {0, 0}, {0, 5}), GeometryError);
  CHECK_THROWS_AS(Triangle({0, 0}, {0, 0}, {1, 1}), GeometryError);
  CHECK_THROWS_AS(Triangle({0, 0}, {1, 1e-12}, {2, 0}), GeometryError);
  CHECK_THROWS_AS(Triangle({NAN, 0}, {1, 0}, {0, 1}), GeometryError);
  CHECK_NOTHROW(Triangle({0, 0}, {1, 1e-6}, {2, 0}));
}

TEST_CASE("orientation is normalized counter-clockwise") {
  const Triangle cw({0, s3}, {1, 0}, {-1, 0});
  CHECK(cw.swapped());
  CHECK(cw.a() == Point{0, s3});
  CHECK(cw.b() == Point{-1, 0});
  CHECK(cw.c() == Point{1, 0});
  CHECK_FALSE(equilateral().swapped());
  CHECK(cw.twice_area() > 0);
}

TEST_CASE("canonicalize") {
  SUBCASE("already canonical") {
    const auto cp = canonicalize(equilateral());
    CHECK(cp.p == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(cp.q == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cp.r == doctest::Approx(s3).epsilon(1e-14));
    CHECK_FALSE(cp.isometry.reflection);
    const Point probe{0.3, -2.7};
    const Point img = cp.isometry.apply(probe);
    CHECK(img.x == doctest::Approx(probe.x).epsilon(1e-14));
    CHECK(img.y == doctest::Approx(probe.y).epsilon(1e-14));
  }
  SUBCASE("translation") {
    const Triangle t({5, 7 + s3}, {4, 7}, {6, 7});
    const auto cp = canonicalize(t);
    CHECK(cp.p == doctest::Approx(-1.0));
    CHECK(cp.q == doctest::Approx(1.0));
    CHECK(cp.r == doctest::Approx(s3));
    const Point o = cp.isometry.apply({0, 0});
    CHECK(o.x == doctest::Approx(-5.0));
    CHECK(o.y == doctest::Approx(-7.0));
  }
  SUBCASE("right isosceles") {
    // BC is a leg here: |BC| = 2 and A is 2 away from it.
    const Triangle t({2, 0}, {0, 0}, {0, 2});
    const auto cp = canonicalize(t);
    CHECK(cp.q - cp.p == doctest::Approx(2.0));
    CHECK(cp.r == doctest::Approx(2.0));
    CHECK(cp.r * (cp.q - cp.p) / 2 == doctest::Approx(2.0));
    // With the hypotenuse as BC: |BC| = 2 sqrt2, height sqrt2.
    const Triangle h({0, 0}, {2, 0}, {0, 2});
    const auto ch = canonicalize(h);
    CHECK(ch.q - ch.p == doctest::Approx(2 * std::sqrt(2.0)));
    CHECK(ch.r == doctest::Approx(std::sqrt(2.0)));
    CHECK(ch.r * (ch.q - ch.p) / 2 == doctest::Approx(h.area()));
  }
  SUBCASE("random triangles map their vertices onto the canonical ones") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-50, 50);
    for (int k = 0; k < 500; ++k) {
      const Triangle t({U(rng), U(rng)}, {U(rng), U(rng)}, {U(rng), U(rng)});
      const auto cp = canonicalize(t);
      CHECK(cp.p < cp.q);
      CHECK(cp.r > 0);
      const double scale = t.longest_side();
      const Point a = cp.isometry.apply(t.a()), b = cp.isometry.apply(t.b()), c = cp.isometry.apply(t.c());
      CHECK(std::abs(a.x) <= 1e-12 * scale);
      CHECK(std::abs(a.y - cp.r) <= 1e-12 * scale);
      CHECK(std::abs(b.x - cp.p) <= 1e-12 * scale);
      CHECK(std::abs(b.y) <= 1e-12 * scale);
      CHECK(std::abs(c.x - cp.q) <= 1e-12 * scale);
      CHECK(std::abs(c.y) <= 1e-12 * scale);
      const Point back = cp.isometry.inverse(a);
      CHECK(distance(back, t.a()) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("distances at the centroid and a vertex") {
  const Triangle t = equilateral();
  const auto d = distances(t, {0, s3 / 3});
  for (double R : {d.RA, d.RB, d.RC}) CHECK(R == doctest::Approx(2 * s3 / 3).epsilon(1e-14));
  for (double r : {d.ra, d.rb, d.rc}) CHECK(r == doctest::Approx(s3 / 3).epsilon(1e-14));

  const auto v = distances(t, t.a());
  CHECK(v.RA == 0.0);
  CHECK(v.RB == doctest::Approx(2.0));
  CHECK(v.RC == doctest::Approx(2.0));
  CHECK(v.ra == doctest::Approx(s3));
  CHECK(std::abs(v.rb) < 1e-15);
  CHECK(std::abs(v.rc) < 1e-15);
}

TEST_CASE("distances match the sweep-frame closed forms") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-600, 600), X(-1000, 1000);
  int checked = 0;
  while (checked < 2000) {
    const double u = U(rng), v = U(rng);
    if (std::abs(v) < 1) continue;
    const Triangle t({u, v}, {-100, 0}, {100, 0});
    const Point m{X(rng), X(rng)};
    // Labels follow the stored vertices; the sweep frame may have B and C swapped.
    const Point B = t.b();
    const auto o = oracle::sweep_frame_distances(u, v, m.x, m.y);
    const auto d = distances(t, m);
    const double rb = B.x < 0 ? o.rb : o.rc, rc = B.x < 0 ? o.rc : o.rb;
    const double RB = B.x < 0 ? o.RB : o.RC, RC = B.x < 0 ? o.RC : o.RB;
    CHECK(close_rel(d.RA, o.RA, 1e-12));
    CHECK(close_rel(d.RB, RB, 1e-12));
    CHECK(close_rel(d.RC, RC, 1e-12));
    CHECK(close_rel(d.ra, o.ra, 1e-12));
    CHECK(close_rel(d.rb, rb, 1e-9));
    CHECK(close_rel(d.rc, rc, 1e-9));
    ++checked;
  }
}

TEST_CASE("gap values") {
  const Triangle t = equilateral();
  CHECK(std::abs(em_gap(t, {0, s3 / 3})) < 1e-14);
  CHECK(em_gap(t, t.a()) == doctest::Approx(4 - 2 * s3).epsilon(1e-14));
  const double far = (1000 - s3) + 2 * std::sqrt(1000001.0) - 2 * (1000 + (1000 - s3));
  CHECK(em_gap(t, {0, 1000}) == doctest::Approx(far).epsilon(1e-13));
  CHECK(far == doctest::Approx(-998.267).epsilon(1e-6));
}

TEST_CASE("GapField agrees with the oracle gap") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-10, 10);
  for (int k = 0; k < 5000; ++k) {
    Point A{U(rng), U(rng)}, B{U(rng), U(rng)}, C{U(rng), U(rng)};
    if (std::abs(cross(B - A, C - A)) < 1e-3) continue;
    const Triangle t(A, B, C);
    const GapField g(t);
    const Point m{3 * U(rng), 3 * U(rng)};
    CHECK(std::abs(g(m) - oracle::gap(A, B, C, m)) <= 1e-12 * g.local_scale(m));
  }
}

TEST_CASE("r_a equals |y| in the canonical frame") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(-5, 5);
  const CanonicalPlacement cp{-0.7, 2.3, 1.9, {}};
  const Triangle t = cp.triangle();
  for (int k = 0; k < 1000; ++k) {
    const Point m{U(rng), U(rng)};
    CHECK(std::abs(distances(t, m).ra - std::abs(m.y)) <= 1e-12 * std::max(1.0, std::abs(m.y)));
  }
}

TEST_CASE("isometry invariance and scale equivariance") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-10, 10), ang(0, 6.283185307179586), sc(0.01, 100);
  for (int k = 0; k < 1000; ++k) {
    Point A{U(rng), U(rng)}, B{U(rng), U(rng)}, C{U(rng), U(rng)};
    if (std::abs(cross(B - A, C - A)) < 1e-2) continue;
    const Point m{2 * U(rng), 2 * U(rng)};
    const double th = ang(rng), s = sc(rng);
    const Point shift{U(rng), U(rng)};
    const bool flip = (k % 2) == 1;
    auto motion = [&](Point p) {
      if (flip) p.x = -p.x;
      return Point{std::cos(th) * p.x - std::sin(th) * p.y, std::sin(th) * p.x + std::cos(th) * p.y} + shift;
    };
    const Triangle t0(A, B, C), t1(motion(A), motion(B), motion(C));
    const auto d0 = distances(t0, m);
    auto d1 = distances(t1, motion(m));
    if (t0.swapped() != t1.swapped()) {  // a reflection reverses orientation
      std::swap(d1.RB, d1.RC);
      std::swap(d1.rb, d1.rc);
    }
    const auto d2 = distances(Triangle(s * A, s * B, s * C), s * m);
    const double tol = 1e-9 * (norm(m) + 30);
    CHECK(std::abs(d0.RA - d1.RA) <= tol);
    CHECK(std::abs(d0.RB - d1.RB) <= tol);
    CHECK(std::abs(d0.RC - d1.RC) <= tol);
    CHECK(std::abs(d0.ra - d1.ra) <= tol);
    CHECK(std::abs(d0.rb - d1.rb) <= tol);
    CHECK(std::abs(d0.rc - d1.rc) <= tol);
    CHECK(std::abs(s * d0.RA - d2.RA) <= s * tol);
    CHECK(std::abs(s * d0.rb - d2.rb) <= s * tol);
    CHECK(std::abs(s * em_gap(Triangle(A, B, C), m) - em_gap(Triangle(s * A, s * B, s * C), s * m)) <= 6 * s * tol);
  }
}

TEST_CASE("mirror frame is bit-exact") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> U(-600, 600), X(-1000, 1000);
  for (int k = 0; k < 2000; ++k) {
    const double u = U(rng), v = U(rng);
    if (std::abs(v) < 1) continue;
    const GapField g(Triangle({u, v}, {-100, 0}, {100, 0}));
    const GapField h(Triangle({-u, v}, {-100, 0}, {100, 0}));
    const double x = X(rng), y = X(rng);
    CHECK(g(x, y) == h(-x, y));
  }
}

TEST_CASE("corner membership") {
  const Triangle t = equilateral();
  SUBCASE("vertex A") {
    const auto c = corner_membership(t, t.a());
    CHECK(c.in_EA);
    CHECK(c.in_EB);
    CHECK(c.in_EC);
    CHECK(c.in_E);
  }
  SUBCASE("centroid, equality in the weighted inequality") {
    const auto c = corner_membership(t, {0, s3 / 3});
    CHECK(c.in_E);
    CHECK(weighted_inequality_holds(t, {0, s3 / 3}));
  }
  SUBCASE("above A, against a brute-force evaluation") {
    const Point m{0, 2.5};
    const auto d = oracle::distances(t.a(), t.b(), t.c(), m);
    const double a = 2, b = 2, c = 2;
    const bool ea = a * d.RA >= c * d.rb + b * d.rc;
    const bool eb = b * d.RB >= a * d.rc + c * d.ra;
    const bool ec = c * d.RC >= b * d.ra + a * d.rb;
    const auto got = corner_membership(t, m);
    CHECK(got.in_EA == ea);
    CHECK(got.in_EB == eb);
    CHECK(got.in_EC == ec);
    CHECK(got.in_E == (ea && eb && ec));
    CHECK_FALSE(got.in_E);
  }
}

TEST_CASE("containment chain on random samples") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> U(-1, 1);
  int inside = 0, in_e = 0;
  for (int k = 0; k < 20000; ++k) {
    Point A{U(rng), U(rng)}, B{U(rng), U(rng)}, C{U(rng), U(rng)};
    if (std::abs(cross(B - A, C - A)) < 1e-3) continue;
    const Triangle t(A, B, C);
    const Point m{2 * U(rng), 2 * U(rng)};
    const auto cm = corner_membership(t, m);
    CHECK(cm.in_E == (cm.in_EA && cm.in_EB && cm.in_EC));
    if (cm.in_E) {
      ++in_e;
      CHECK(em_gap(t, m) >= -1e-9 * GapField(t).local_scale(m));
    }
    if (t.contains(m)) {
      ++inside;
      CHECK(cm.in_E);
    }
  }
  CHECK(inside > 100);
  CHECK(in_e > inside);
}

}  // TEST_SUITE
