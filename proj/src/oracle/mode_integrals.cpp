#include "fermi/oracle/mode_integrals.hpp"

#include "fermi/oracle/ref_specfun.hpp"

#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace fermi::oracle {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// Neville extrapolation to h = 0 of samples f(h_k); returns value and |last - previous| diagonal.
std::pair<cplx, double> extrapolate_to_zero(const std::vector<double>& h, const std::vector<cplx>& f) {
  std::vector<cplx> p = f;
  cplx prev_diag = f.back();
  double err = 1e300;
  const std::size_t n = h.size();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i)
      p[i] = (h[i + m] * p[i] - h[i] * p[i + 1]) / (h[i + m] - h[i]);
    // p[n-1-m] now holds the extrapolant through the last m+1 samples
    err = std::abs(p[n - 1 - m] - prev_diag);
    prev_diag = p[n - 1 - m];
  }
  return {p[0], err};
}

// ordinary Fourier integral of a finite interval with the regulator e^{-eps (w - a)};
// anchoring it at a keeps the eps dependence on the scale 1/gamma
cplx damped_piece(double gamma, double eps, double shift, double a, double b, double tol, long& evals) {
  auto f = [=](double w) -> cplx { return std::exp(kI * (gamma * w) - eps * (w - a)) / (w + shift); };
  const auto r = adaptive_split<cplx>(f, a, b, gamma, tol);
  evals += r.evaluations;
  return r.value;
}

QuadratureResult<cplx> regulated_tail(double gamma, double shift, double a, double tol) {
  // F(eps) is analytic in eps with radius gamma; sample eps0 / 2^k
  const double eps0 = 0.25 * gamma;
  std::vector<double> eps;
  std::vector<cplx> vals;
  long evals = 0;
  for (int k = 0; k < 7; ++k) {
    const double e = eps0 / std::pow(2.0, k);
    const double cut = a + 46.0 / e; // e^{-46} ~ 1e-20
    eps.push_back(e);
    vals.push_back(damped_piece(gamma, e, shift, a, cut, tol * 1e-3, evals));
  }
  const auto [v, err] = extrapolate_to_zero(eps, vals);
  return {v, err, evals};
}

double local_dt(double u) {
  if (std::abs(u) < 1e-4)
    return (1.0 - u * u / 24.0) / (2.0 * kPi);
  return std::sin(0.5 * u) / (kPi * u);
}

void require_tol(const char* who, double err, double tol) {
  if (!(err <= tol)) {
    std::ostringstream os;
    os << who << ": error estimate " << err << " exceeds tolerance " << tol;
    throw ConvergenceError(os.str());
  }
}

// first multiple of pi/omega at or above s
double align(double s, double omega) {
  const double half = kPi / omega;
  return std::ceil(s / half) * half;
}

} // namespace

QuadratureResult<cplx> regulated_shifted_fourier(double gamma, double beta, double tol) {
  auto r = regulated_tail(gamma, beta, 0.0, tol);
  require_tol("regulated_shifted_fourier", r.error_estimate, tol);
  return r;
}

QuadratureResult<cplx> regulated_pole_fourier(double gamma, double beta, double tol) {
  // [0, 2b]: subtract e^{i g b}/(w - b), whose principal value over the symmetric interval is 0
  const cplx phase = std::exp(kI * (gamma * beta));
  auto subtracted = [=](double w) -> cplx {
    const double u = w - beta;
    const double gu = gamma * u;
    if (std::abs(gu) < 1e-4)
      return phase * kI * gamma * (1.0 + kI * gu / 2.0 - gu * gu / 6.0);
    return phase * (std::exp(kI * gu) - 1.0) / u;
  };
  const auto head = adaptive_split<cplx>(subtracted, 0.0, 2.0 * beta, gamma, tol * 1e-3);
  auto tail = regulated_tail(gamma, -beta, 2.0 * beta, tol);
  tail.value += head.value;
  tail.error_estimate += head.error_estimate;
  tail.evaluations += head.evaluations;
  require_tol("regulated_pole_fourier", tail.error_estimate, tol);
  return tail;
}

QuadratureResult<double> quad_M(double z, double x, double tol) {
  const double tau = z / x;
  auto head_f = [=](double s) {
    return std::sin(z * s) / z * tau * tau * local_dt((1.0 + s) * tau) * local_dt((1.0 - s) * tau);
  };
  const double s0 = align(3.0, z);
  const auto head = adaptive_split<double>(head_f, 0.0, s0, z, tol * 0.1);

  // beyond s0: (cos s tau - cos tau)/(1 - s^2) split into pure frequencies
  auto g = [](double s) { return 1.0 / (2.0 * kPi * kPi * (1.0 - s * s)); };
  QuadratureResult<double> out{head.value, head.error_estimate, head.evaluations};
  auto add = [&](double omega, double coeff) {
    if (omega == 0.0 || coeff == 0.0)
      return;
    const auto r = fourier_tail(g, s0, omega, tol * 0.1);
    out.value += coeff * r.value.imag() / z;
    out.error_estimate += std::abs(coeff) * r.error_estimate / z;
    out.evaluations += r.evaluations;
  };
  add(z + tau, 0.5);
  add(z - tau, 0.5);
  add(z, -std::cos(tau));
  require_tol("quad_M", out.error_estimate, tol);
  return out;
}

cplx fd_check_l(double z, double x, double step) {
  const double tau = z / x;
  auto h = [&](double zz) { return quad_M(zz, zz / tau, 1e-13).value; };
  const double h0 = h(z);
  const double base = std::min(step, 0.25 * std::abs(z - tau)); // stay clear of the pole at z = tau
  std::vector<double> steps;
  std::vector<cplx> d1, d2;
  for (int k = 0; k < 3; ++k) {
    const double s = base / std::pow(2.0, k);
    const double hp = h(z + s), hm = h(z - s);
    steps.push_back(s * s);
    d1.push_back((hp - hm) / (2.0 * s));
    d2.push_back((hp - 2.0 * h0 + hm) / (s * s));
  }
  const cplx first = extrapolate_to_zero(steps, d1).first;
  const cplx second = extrapolate_to_zero(steps, d2).first;
  return -4.0 * kPi * std::exp(kI * tau) * (second + first / z);
}

QuadratureResult<double> quad_uv2(double z, double x, Emission which, double tol) {
  const double tau = z / x;
  const double shift = which == Emission::u ? -1.0 : 1.0; // q = s + shift

  // sum over transverse polarizations of |e . d|^2, integrated over directions
  auto projector = [](double c) { return 2.0 * kPi * (1.0 - c * c); };
  const double angular = adaptive<double>(projector, -1.0, 1.0, 1e-15).value;

  auto kernel = [=](double s) {
    const double q = s + shift;
    const double e = tau * 2.0 * kPi * local_dt(q * tau); // |int_0^tau e^{iqt} dt|
    return e * e;
  };
  const double s0 = 4.0;
  const auto head = adaptive_split<double>(kernel, 0.0, s0, 0.5 * tau, tol * 0.1);
  // beyond s0: 2/q^2 - 2 Re e^{i q tau}/q^2
  const double smooth = 2.0 / (s0 + shift);
  auto g = [=](double s) { return -2.0 / ((s + shift) * (s + shift)); };
  const auto osc = fourier_tail(g, s0, tau, tol * 0.1);
  const double osc_val = (std::exp(kI * (shift * tau)) * osc.value).real();

  const double scale = angular / (4.0 * kPi * kPi);
  QuadratureResult<double> out{scale * (head.value + smooth + osc_val),
                               scale * (head.error_estimate + osc.error_estimate), head.evaluations + osc.evaluations};
  require_tol("quad_uv2", out.error_estimate, tol);
  return out;
}

namespace {

// (1 - i q tau - e^{-i q tau}) / q^2
cplx kernel_K(double q, double tau) {
  const double th = q * tau;
  if (std::abs(th) < 1e-3) {
    const double t2 = tau * tau;
    return t2 * (0.5 - kI * th / 6.0 - th * th / 24.0 + kI * th * th * th / 120.0);
  }
  return (1.0 - kI * th - std::exp(-kI * th)) / (q * q);
}

} // namespace

QuadratureResult<cplx> quad_I(double z, double x, double tol) {
  const double tau = z / x;
  auto head_f = [=](double s) -> cplx { return std::sin(z * s) * (kernel_K(s - 1.0, tau) + kernel_K(s + 1.0, tau)); };
  const double s0 = align(3.0, z);
  const auto head = adaptive_split<cplx>(head_f, 0.0, s0, z, tol * 0.1 * z);

  QuadratureResult<cplx> sum{head.value, head.error_estimate, head.evaluations};
  auto add = [&](auto g, double omega, cplx coeff) {
    const auto r = fourier_tail(g, s0, omega, tol * 0.05 * z);
    sum.value += coeff * r.value;
    sum.error_estimate += std::abs(coeff) * r.error_estimate;
    sum.evaluations += r.evaluations;
  };
  // non-oscillating parts of K, against sin(zs)
  auto A = [=](double s) -> cplx {
    const double a = s - 1.0, b = s + 1.0;
    return -kI * tau * (1.0 / a + 1.0 / b) + 1.0 / (a * a) + 1.0 / (b * b);
  };
  // -e^{-i q tau}/q^2 parts: e^{-i s tau} times B
  auto B = [=](double s) -> cplx {
    const double a = s - 1.0, b = s + 1.0;
    return -(std::exp(kI * tau) / (a * a) + std::exp(-kI * tau) / (b * b));
  };
  const cplx half_i = 1.0 / (2.0 * kI);
  add(A, z, half_i);
  add(A, -z, -half_i);
  add(B, z - tau, half_i);
  add(B, -(z + tau), -half_i);

  QuadratureResult<cplx> out{-sum.value / z, sum.error_estimate / z, sum.evaluations};
  require_tol("quad_I", out.error_estimate, tol);
  return out;
}

namespace {

using mp_complex = boost::multiprecision::cpp_complex_50;

mp_complex ei_mp(const mp_real& y) {
  const RefComplex e = ref_ei_imag(y);
  return {e.re, e.im};
}

mp_complex reference_I_mp(const mp_real& z, const mp_real& tau) {
  const mp_complex i(0, 1);
  const mp_complex eiz = exp(i * z), emiz = exp(-i * z);
  const mp_complex ez = ei_mp(z), emz = ei_mp(-z);
  mp_complex sum = 0;
  for (int sigma : {+1, -1}) {
    const mp_real w = z + sigma * tau;
    const mp_real weight = (1 + sigma * tau / z) / 2;
    sum += weight * (eiz * (emz - ei_mp(-w)) + emiz * (ez - ei_mp(w)));
  }
  if (tau > z) {
    const mp_real pi = boost::math::constants::pi<mp_real>();
    sum += -i * pi * (1 - tau / z) * eiz;
  }
  return sum;
}

cplx to_cplx(const mp_complex& v) { return {static_cast<double>(v.real()), static_cast<double>(v.imag())}; }

struct Derivs {
  mp_complex d1, d2;
};

Derivs central(const mp_real& z, const mp_real& tau, const mp_real& h, const mp_complex& f0) {
  const mp_complex fp = reference_I_mp(z + h, tau), fm = reference_I_mp(z - h, tau);
  return {(fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h)};
}

double safe_step(double z, double x, double step) {
  const double tau = z / x;
  return std::min(step, 0.25 * std::abs(z - tau));
}

} // namespace

cplx reference_I(double z, double x) { return to_cplx(reference_I_mp(mp_real(z), mp_real(z) / mp_real(x))); }

cplx fd_b_central(double z, double x, double step) {
  const mp_real mz = z, tau = mp_real(z) / mp_real(x);
  const double h = safe_step(z, x, step);
  const Derivs d = central(mz, tau, mp_real(h), reference_I_mp(mz, tau));
  return to_cplx(-(d.d2 + d.d1 / mz) / boost::math::constants::pi<mp_real>());
}

cplx fd_check_b(double z, double x, double step) {
  const mp_real mz = z, tau = mp_real(z) / mp_real(x);
  const double h0 = safe_step(z, x, step);
  const mp_complex f0 = reference_I_mp(mz, tau);
  constexpr int levels = 4;
  mp_complex table[levels][levels];
  for (int k = 0; k < levels; ++k) {
    const Derivs d = central(mz, tau, mp_real(h0) / (1 << k), f0);
    table[k][0] = -(d.d2 + d.d1 / mz) / boost::math::constants::pi<mp_real>();
    mp_real factor = 4;
    for (int j = 1; j <= k; ++j, factor *= 4)
      table[k][j] = table[k][j - 1] + (table[k][j - 1] - table[k - 1][j - 1]) / (factor - 1);
  }
  const mp_complex best = table[levels - 1][levels - 1];
  const mp_real diff = abs(best - table[levels - 2][levels - 2]);
  const mp_real rel = diff / abs(best);
  if (!(rel < 1e-6)) {
    std::ostringstream os;
    os << "fd_check_b: Richardson extrapolation did not settle at (z=" << z << ", x=" << x
       << "), relative change " << static_cast<double>(rel);
    throw ConvergenceError(os.str());
  }
  return to_cplx(best);
}

} // namespace fermi::oracle
