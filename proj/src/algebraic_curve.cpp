#include "emcurve/algebraic_curve.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace emcurve {

double LinearForm::distance(Point m) const { return std::abs((*this)(m)) / norm; }

LinearForms linear_forms(const CanonicalPlacement& cp) {
  const double p = cp.p, q = cp.q, r = cp.r;
  LinearForms f;
  f.a = {0.0, q - p, 0.0, q - p};
  f.b = {-r, -q, q * r, std::sqrt(r * r + q * q)};
  // p(y - r) + r x is positive at C because p < q.
  f.c = {r, p, -p * r, std::sqrt(r * r + p * p)};
  return f;
}

SignCase SignCase::from_index(int idx) {
  if (idx < 0 || idx > 7) throw std::out_of_range("sign case index");
  return {(idx & 1) ? -1 : 1, (idx & 2) ? -1 : 1, (idx & 4) ? -1 : 1};
}

std::array<SignCase, 8> SignCase::all() {
  std::array<SignCase, 8> out;
  for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(i)] = from_index(i);
  return out;
}

std::string to_string(SignCase s) {
  auto ch = [](int v) { return v < 0 ? '-' : '+'; };
  return {ch(s.sa), ',', ch(s.sb), ',', ch(s.sc)};
}

SignCase parse_sign_case(const std::string& text) {
  std::array<int, 3> v{};
  std::size_t n = 0;
  for (char ch : text) {
    if (ch == ',' || ch == ' ') continue;
    if (n == 3 || (ch != '+' && ch != '-')) {
      throw std::invalid_argument("sign case must look like +,-,+ : " + text);
    }
    v[n++] = ch == '-' ? -1 : 1;
  }
  if (n != 3) throw std::invalid_argument("sign case must have three signs: " + text);
  return {v[0], v[1], v[2]};
}

SignCaseResult sign_case_at(const CanonicalPlacement& cp, Point m) {
  const LinearForms f = linear_forms(cp);
  SignCaseResult out;
  auto resolve = [&](const LinearForm& form) {
    const double v = form(m);
    if (v == 0.0) {
      out.tie = true;
      return 1;
    }
    return v > 0.0 ? 1 : -1;
  };
  out.sign = {resolve(f.a), resolve(f.b), resolve(f.c)};
  return out;
}

Poly2 signed_S(const CanonicalPlacement& cp, SignCase sign) {
  const LinearForms f = linear_forms(cp);
  Poly2 s(1);
  s += (sign.sa / f.a.norm) * f.a.poly();
  s += (sign.sb / f.b.norm) * f.b.poly();
  s += (sign.sc / f.c.norm) * f.c.poly();
  return 2.0 * s;
}

std::array<Poly2, 3> quadratic_triple(const CanonicalPlacement& cp) {
  auto squared_distance = [](double px, double py) {
    const Poly2 dx = Poly2::linear(1.0, 0.0, -px);
    const Poly2 dy = Poly2::linear(0.0, 1.0, -py);
    return dx * dx + dy * dy;
  };
  return {squared_distance(0.0, cp.r), squared_distance(cp.p, 0.0), squared_distance(cp.q, 0.0)};
}

OcticPolynomial::OcticPolynomial(const Poly2& p) : poly_(kDegree) {
  if (p.degree() > kDegree) throw std::invalid_argument("polynomial exceeds degree 8");
  for (int i = 0; i <= kDegree; ++i) {
    for (int j = 0; i + j <= kDegree; ++j) {
      const double v = p.coeff(i, j);
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite octic coefficient");
      poly_.set(i, j, v);
    }
  }
}

std::vector<OcticPolynomial::Term> OcticPolynomial::terms() const {
  std::vector<Term> out;
  out.reserve(kSlots);
  for (int d = 0; d <= kDegree; ++d) {
    for (int i = d; i >= 0; --i) out.push_back({i, d - i, poly_.coeff(i, d - i)});
  }
  return out;
}

OcticPolynomial build_octic(const CanonicalPlacement& cp, SignCase sign, QOrder order) {
  const int seen = (1 << order.first) | (1 << order.second) | (1 << order.paired);
  if (seen != 7) throw std::invalid_argument("QOrder must be a permutation of {0,1,2}");

  const auto q = quadratic_triple(cp);
  const Poly2& qi = q[static_cast<std::size_t>(order.first)];
  const Poly2& qj = q[static_cast<std::size_t>(order.second)];
  const Poly2& qk = q[static_cast<std::size_t>(order.paired)];
  const Poly2 s = signed_S(cp, sign);
  const Poly2 s2 = s * s;

  // 2 sqrt(Qi Qj) + 2 S sqrt(Qk) = W, squared twice.
  const Poly2 w = s2 + qk - qi - qj;
  const Poly2 inner = w * w - 4.0 * (qi * qj) - 4.0 * (s2 * qk);
  const Poly2 residual = inner * inner - 64.0 * (s2 * (q[0] * q[1] * q[2]));
  return OcticPolynomial(residual);
}

double eval_octic(const OcticPolynomial& p, Point m) { return p.poly()(m.x, m.y); }

}  // namespace emcurve
