#pragma once

#include <array>
#include <string>
#include <vector>

#include "emcurve/geometry.hpp"
#include "emcurve/polynomial.hpp"

namespace emcurve {

/// alpha*x + beta*y + gamma in the canonical frame, with its norm
/// sqrt(alpha^2 + beta^2). Positive at the vertex opposite its side.
struct LinearForm {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double norm = 1.0;

  double operator()(Point m) const { return alpha * m.x + beta * m.y + gamma; }
  double distance(Point m) const;
  Poly2 poly() const { return Poly2::linear(alpha, beta, gamma); }
};

struct LinearForms {
  LinearForm a;  // line BC: (q - p) y
  LinearForm b;  // line CA: -q (y - r) - r x
  LinearForm c;  // line AB: p (y - r) + r x
};

LinearForms linear_forms(const CanonicalPlacement& cp);

/// Resolved signs of the three absolute values in S = 2 (r_a + r_b + r_c).
struct SignCase {
  int sa = 1;
  int sb = 1;
  int sc = 1;

  friend bool operator==(const SignCase&, const SignCase&) = default;

  /// Dense index 0..7 (bit set = negative sign).
  int index() const { return (sa < 0 ? 1 : 0) | (sb < 0 ? 2 : 0) | (sc < 0 ? 4 : 0); }
  static SignCase from_index(int idx);
  static std::array<SignCase, 8> all();
};

std::string to_string(SignCase s);
/// Parses "+,-,+" style strings.
SignCase parse_sign_case(const std::string& text);

struct SignCaseResult {
  SignCase sign;
  bool tie = false;  // some form vanished; its sign defaulted to +1
};

SignCaseResult sign_case_at(const CanonicalPlacement& cp, Point m);

/// S with each absolute value replaced by sigma * form / norm; degree 1.
Poly2 signed_S(const CanonicalPlacement& cp, SignCase sign);

/// The three squared vertex distances Q1 (to A), Q2 (to B), Q3 (to C).
std::array<Poly2, 3> quadratic_triple(const CanonicalPlacement& cp);

/// Degree <= 8 polynomial with exactly 45 coefficient slots.
class OcticPolynomial {
public:
  static constexpr int kDegree = 8;
  static constexpr std::size_t kSlots = 45;

  OcticPolynomial() : poly_(kDegree) {}
  explicit OcticPolynomial(const Poly2& p);

  const Poly2& poly() const { return poly_; }
  double coeff(int i, int j) const { return poly_.coeff(i, j); }
  int degree() const { return poly_.degree(); }
  double max_abs_coeff() const { return poly_.max_abs_coeff(); }

  struct Term {
    int i;
    int j;
    double c;
  };
  /// All 45 (i, j, c) triples ordered by total degree, then by i descending.
  std::vector<Term> terms() const;

private:
  Poly2 poly_;
};

/// Which Q is paired with S in the squaring chain; the paper's order isolates Q3.
struct QOrder {
  int first = 0;   // 0-based index into {Q1, Q2, Q3}
  int second = 1;
  int paired = 2;
};

/// ((S^2 + Qk - Qi - Qj)^2 - 4 Qi Qj - 4 S^2 Qk)^2 - 64 S^2 Q1 Q2 Q3, expanded.
OcticPolynomial build_octic(const CanonicalPlacement& cp, SignCase sign, QOrder order = {});

double eval_octic(const OcticPolynomial& p, Point m);

}  // namespace emcurve
