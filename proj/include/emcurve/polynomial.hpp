#pragma once

#include <cstddef>
#include <vector>

namespace emcurve {

/// Dense bivariate polynomial sum c_ij x^i y^j over i + j <= degree bound.
///
/// Coefficients live in a triangular array; products accumulate every output
/// coefficient with Neumaier compensated summation.
class Poly2 {
public:
  Poly2() : Poly2(0) {}
  explicit Poly2(int degree_bound);

  static Poly2 constant(double c);
  /// alpha*x + beta*y + gamma
  static Poly2 linear(double alpha, double beta, double gamma);

  int degree_bound() const { return bound_; }
  /// Highest i + j with a nonzero coefficient, or -1 for the zero polynomial.
  int degree() const;

  double coeff(int i, int j) const;
  void set(int i, int j, double value);

  double operator()(double x, double y) const;
  /// Evaluation of sum |c_ij| |x|^i |y|^j, the natural scale for rounding error.
  double abs_eval(double x, double y) const;
  double max_abs_coeff() const;

  Poly2& operator+=(const Poly2& other);
  Poly2& operator-=(const Poly2& other);
  Poly2& operator*=(double s);

  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(double s, Poly2 a) { return a *= s; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);

  static std::size_t slot_count(int degree_bound) {
    const auto n = static_cast<std::size_t>(degree_bound + 1);
    return n * (n + 1) / 2;
  }

private:
  std::size_t index(int i, int j) const;
  void grow(int degree_bound);

  int bound_;
  std::vector<double> c_;
};

}  // namespace emcurve
