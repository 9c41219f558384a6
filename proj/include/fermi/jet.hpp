#pragma once

#include <complex>

namespace fermi::detail {

// Value with first and second derivative in one variable; used to apply the
// radial dipole operator to closed forms without hand-expanding derivatives.
struct Jet {
  std::complex<double> v, d1, d2;

  static Jet constant(std::complex<double> c) { return {c, 0.0, 0.0}; }
  static Jet variable(double x) { return {x, 1.0, 0.0}; }
};

inline Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
inline Jet operator-(const Jet& a, const Jet& b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
inline Jet operator-(const Jet& a) { return {-a.v, -a.d1, -a.d2}; }
inline Jet operator*(const Jet& a, const Jet& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
inline Jet operator*(std::complex<double> c, const Jet& a) { return {c * a.v, c * a.d1, c * a.d2}; }
inline Jet operator*(const Jet& a, std::complex<double> c) { return c * a; }
inline Jet operator*(double c, const Jet& a) { return {c * a.v, c * a.d1, c * a.d2}; }
inline Jet operator*(const Jet& a, double c) { return c * a; }
inline Jet operator+(const Jet& a, std::complex<double> c) { return {a.v + c, a.d1, a.d2}; }
inline Jet operator+(std::complex<double> c, const Jet& a) { return a + c; }

// f(g) given f, f', f'' at g.v
inline Jet compose(const Jet& g, std::complex<double> f, std::complex<double> fp, std::complex<double> fpp) {
  return {f, fp * g.d1, fpp * g.d1 * g.d1 + fp * g.d2};
}

inline Jet reciprocal(const Jet& a) {
  const auto r = 1.0 / a.v;
  return compose(a, r, -r * r, 2.0 * r * r * r);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

// e^{i a} for a real-valued jet
inline Jet exp_i(const Jet& a) {
  const auto e = std::exp(std::complex<double>(0.0, 1.0) * a.v);
  const std::complex<double> i(0.0, 1.0);
  return compose(a, e, i * e, -e);
}

inline Jet sin(const Jet& a) {
  const auto s = std::sin(a.v), c = std::cos(a.v);
  return compose(a, s, c, -s);
}

inline Jet cos(const Jet& a) {
  const auto s = std::sin(a.v), c = std::cos(a.v);
  return compose(a, c, -s, -c);
}

} // namespace fermi::detail
