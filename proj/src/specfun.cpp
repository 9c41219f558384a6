#include "fermi/specfun.hpp"

#include "fermi/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fermi {

namespace {

constexpr double kEuler = std::numbers::egamma;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Below this the power series is used, above it the continued fraction for
// E1(iy). At y = 2 the series terms peak near 1.3 so cancellation costs < 1 digit,
// and the fraction needs ~60 iterations.
constexpr double kSeriesLimit = 2.0;

struct SiCi {
  double si; // Si(y) - pi/2
  double ci;
};

SiCi series(double y) {
  // Si = sum (-1)^k y^(2k+1) / ((2k+1)(2k+1)!),  Cin = sum (-1)^(k+1) y^(2k) / (2k (2k)!)
  double si_sum = 0.0;
  double cin_sum = 0.0;
  double term = y; // y^(2k+1)/(2k+1)!
  for (int k = 0; k < 60; ++k) {
    const double si_t = term / (2 * k + 1);
    si_sum += si_t;
    // y^(2k+2)/(2k+2)! from term
    const double even = term * y / (2 * k + 2);
    const double cin_t = even / (2 * k + 2);
    cin_sum += cin_t;
    term = -even * y / (2 * k + 3);
    if (std::abs(si_t) < 1e-18 * std::abs(si_sum) && std::abs(cin_t) < 1e-18 * std::abs(cin_sum))
      break;
  }
  return {si_sum - kHalfPi, kEuler + std::log(y) - cin_sum};
}

SiCi continued_fraction(double y) {
  // Modified Lentz on E1(iy) = e^{-iy} / (1 + iy - 1^2/(3 + iy - 2^2/(5 + iy - ...))).
  constexpr double tiny = 1e-300;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  cplx b(1.0, y);
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 2; i < 100000; ++i) {
    const double a = -double(i - 1) * double(i - 1);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cplx del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < eps)
      break;
  }
  h *= cplx(std::cos(y), -std::sin(y));
  return {h.imag(), -h.real()};
}

SiCi si_ci(double y) { return y <= kSeriesLimit ? series(y) : continued_fraction(y); }

} // namespace

double sin_integral(double y) {
  if (!(y >= 0.0))
    throw DomainError("sin_integral: argument must be >= 0, got " + std::to_string(y));
  if (y == 0.0)
    return -kHalfPi;
  return si_ci(y).si;
}

double cos_integral(double y) {
  if (!(y > 0.0))
    throw DomainError("cos_integral: argument must be > 0, got " + std::to_string(y));
  return si_ci(y).ci;
}

cplx ei_imag(double y) {
  if (y == 0.0 || std::isnan(y))
    throw DomainError("ei_imag: argument must be nonzero");
  const SiCi v = si_ci(std::abs(y));
  return {v.ci, y > 0.0 ? v.si : -v.si};
}

double delta_t_kernel(double u) {
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return (1.0 - u2 / 24.0 + u2 * u2 / 1920.0) / (2.0 * std::numbers::pi);
  }
  return std::sin(0.5 * u) / (std::numbers::pi * u);
}

double sine_integral_odd(double w) {
  if (w == 0.0)
    return 0.0;
  const double s = sin_integral(std::abs(w)) + kHalfPi;
  return w > 0.0 ? s : -s;
}

} // namespace fermi
