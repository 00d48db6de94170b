#include "emcurve/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emcurve {

namespace {

struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

Poly2::Poly2(int degree_bound) : bound_(degree_bound), c_(slot_count(degree_bound), 0.0) {
  if (degree_bound < 0) throw std::invalid_argument("negative degree bound");
}

Poly2 Poly2::constant(double c) {
  Poly2 p(0);
  p.set(0, 0, c);
  return p;
}

Poly2 Poly2::linear(double alpha, double beta, double gamma) {
  Poly2 p(1);
  p.set(1, 0, alpha);
  p.set(0, 1, beta);
  p.set(0, 0, gamma);
  return p;
}

// Slots are grouped by x-exponent: for fixed i the y-exponents 0..bound-i.
std::size_t Poly2::index(int i, int j) const {
  const auto b = static_cast<std::size_t>(bound_);
  const auto ii = static_cast<std::size_t>(i);
  return ii * (b + 1) - ii * (ii - 1) / 2 + static_cast<std::size_t>(j);
}

int Poly2::degree() const {
  for (int d = bound_; d >= 0; --d) {
    for (int i = 0; i <= d; ++i) {
      if (c_[index(i, d - i)] != 0.0) return d;
    }
  }
  return -1;
}

double Poly2::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > bound_) return 0.0;
  return c_[index(i, j)];
}

void Poly2::set(int i, int j, double value) {
  if (i < 0 || j < 0) throw std::out_of_range("negative exponent");
  if (i + j > bound_) grow(i + j);
  c_[index(i, j)] = value;
}

void Poly2::grow(int degree_bound) {
  Poly2 bigger(degree_bound);
  for (int i = 0; i <= bound_; ++i) {
    for (int j = 0; i + j <= bound_; ++j) bigger.c_[bigger.index(i, j)] = c_[index(i, j)];
  }
  *this = std::move(bigger);
}

double Poly2::operator()(double x, double y) const {
  double outer = 0.0;
  for (int i = bound_; i >= 0; --i) {
    double inner = 0.0;
    for (int j = bound_ - i; j >= 0; --j) inner = inner * y + c_[index(i, j)];
    outer = outer * x + inner;
  }
  return outer;
}

double Poly2::abs_eval(double x, double y) const {
  const double ax = std::abs(x), ay = std::abs(y);
  double outer = 0.0;
  for (int i = bound_; i >= 0; --i) {
    double inner = 0.0;
    for (int j = bound_ - i; j >= 0; --j) inner = inner * ay + std::abs(c_[index(i, j)]);
    outer = outer * ax + inner;
  }
  return outer;
}

double Poly2::max_abs_coeff() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Poly2& Poly2::operator+=(const Poly2& other) {
  if (other.bound_ > bound_) grow(other.bound_);
  for (int i = 0; i <= other.bound_; ++i) {
    for (int j = 0; i + j <= other.bound_; ++j) c_[index(i, j)] += other.c_[other.index(i, j)];
  }
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& other) {
  if (other.bound_ > bound_) grow(other.bound_);
  for (int i = 0; i <= other.bound_; ++i) {
    for (int j = 0; i + j <= other.bound_; ++j) c_[index(i, j)] -= other.c_[other.index(i, j)];
  }
  return *this;
}

Poly2& Poly2::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  const int bound = a.bound_ + b.bound_;
  std::vector<NeumaierSum> acc(Poly2::slot_count(bound));
  Poly2 out(bound);
  for (int i1 = 0; i1 <= a.bound_; ++i1) {
    for (int j1 = 0; i1 + j1 <= a.bound_; ++j1) {
      const double ca = a.c_[a.index(i1, j1)];
      if (ca == 0.0) continue;
      for (int i2 = 0; i2 <= b.bound_; ++i2) {
        for (int j2 = 0; i2 + j2 <= b.bound_; ++j2) {
          const double cb = b.c_[b.index(i2, j2)];
          if (cb == 0.0) continue;
          acc[out.index(i1 + i2, j1 + j2)].add(ca * cb);
        }
      }
    }
  }
  for (std::size_t k = 0; k < acc.size(); ++k) out.c_[k] = acc[k].value();
  return out;
}

}  // namespace emcurve
