#include "fermi/amplitudes.hpp"

#include "fermi/errors.hpp"
#include "fermi/jet.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>

namespace fermi {

using detail::Jet;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

std::string fmt_point(const PhysParams& p) {
  std::ostringstream os;
  os.precision(12);
  os << "(z=" << p.z << ", x=" << p.x << ")";
  return os.str();
}

void require_argument(const char* who, const char* what, double value, const PhysParams& p) {
  if (!(std::abs(value) >= kArgumentFloor)) {
    std::ostringstream os;
    os.precision(6);
    os << who << ": singular point at " << fmt_point(p) << ", argument " << what << " = " << value;
    throw SingularPointError(os.str());
  }
}

void require_off_pole(const char* who, const PhysParams& p) {
  if (p.x == 1.0)
    throw SingularPointError(std::string(who) + ": pole at x = 1");
  require_argument(who, "z(1-1/x)", p.z - p.tau(), p);
}

// Ci(|w|) with its derivatives in w
Jet ci_abs(const Jet& w) {
  const double v = w.v.real();
  const double c = std::cos(v), s = std::sin(v);
  return detail::compose(w, cos_integral(std::abs(v)), c / v, -s / v - c / (v * v));
}

// odd Si(w)
Jet si_odd(const Jet& w) {
  const double v = w.v.real();
  const double c = std::cos(v), s = std::sin(v);
  return detail::compose(w, sine_integral_odd(v), s / v, c / v - s / (v * v));
}

// Ei(iw)
Jet ei_i(const Jet& w) {
  const double v = w.v.real();
  const cplx e = std::exp(kI * v);
  return detail::compose(w, ei_imag(v), e / v, e * (kI / v - 1.0 / (v * v)));
}

// -(1/pi) (F'' + F'/z): the radial dipole operator for parallel dipoles
// orthogonal to the separation, in units of alpha dtilde^2.
cplx dipole_image(const Jet& f, double z) { return -(f.d2 + f.d1 / z) / kPi; }

// sum over sigma of ((1 + sigma tau/z)/2) [e^{iz} E(-w) + e^{-iz} E(w)] - e^{-i sigma z} E(sigma z),
// w = z + sigma tau. This is I'(z) at fixed tau.
Jet source_I_prime(const PhysParams& p) {
  const double tau = p.tau();
  const Jet z = Jet::variable(p.z);
  const Jet inv_z = detail::reciprocal(z);
  const Jet eiz = detail::exp_i(z), emiz = detail::exp_i(-z);
  Jet sum = Jet::constant(0.0);
  for (int sigma : {+1, -1}) {
    const Jet w = z + cplx(sigma * tau);
    const Jet weight = 0.5 * (Jet::constant(1.0) + (sigma * tau) * inv_z);
    sum = sum + weight * (eiz * ei_i(-w) + emiz * ei_i(w));
  }
  return sum - emiz * ei_i(z) - eiz * ei_i(-z);
}

Jet source_I(const PhysParams& p) {
  const double tau = p.tau();
  const Jet z = Jet::variable(p.z);
  const Jet inv_z = detail::reciprocal(z);
  const Jet eiz = detail::exp_i(z), emiz = detail::exp_i(-z);
  Jet sum = Jet::constant(0.0);
  for (int sigma : {+1, -1}) {
    const Jet w = z + cplx(sigma * tau);
    const Jet weight = 0.5 * (Jet::constant(1.0) + (sigma * tau) * inv_z);
    sum = sum + weight * (eiz * (ei_i(-z) - ei_i(-w)) + emiz * (ei_i(z) - ei_i(w)));
  }
  if (p.x < 1.0)
    sum = sum + (-kI * kPi) * (Jet::constant(1.0) - tau * inv_z) * eiz;
  return sum;
}

} // namespace

void PhysParams::validate() const {
  std::ostringstream os;
  if (!(z > 0.0) || !std::isfinite(z))
    os << "z must be > 0; ";
  if (!(x > 0.0) || !std::isfinite(x))
    os << "x must be > 0; ";
  if (!(dtilde > 0.0) || !std::isfinite(dtilde))
    os << "dtilde must be > 0; ";
  if (!(alpha > 0.0 && alpha < 0.01))
    os << "alpha must lie in (0, 0.01); ";
  if (!(cutoff_ratio > 1.0) || !std::isfinite(cutoff_ratio))
    os << "cutoff_ratio must be > 1; ";
  const std::string msg = os.str();
  if (!msg.empty())
    throw DomainError("invalid PhysParams: " + msg.substr(0, msg.size() - 2));
}

cplx amp_a(const PhysParams& p) {
  if (p.cutoff_ratio == 1.0)
    throw DomainError("amp_a: cutoff_ratio = 1 makes the logarithm singular");
  p.validate();
  const double r = p.cutoff_ratio;
  const double log_term = std::log(std::abs((1.0 - r) / (1.0 + r)));
  return kI * (2.0 * p.coupling() * p.tau() / (3.0 * kPi) * log_term);
}

cplx amp_b(const PhysParams& p) {
  p.validate();
  require_off_pole("amp_b", p);
  const double z = p.z, x = p.x, tau = p.tau();
  const double w1 = z - tau, w2 = z + tau;
  require_argument("amp_b", "z(1+1/x)", w2, p);
  const cplx eiz = std::exp(kI * z), emiz = std::exp(-kI * z);
  const double z2 = z * z, xz = x * z, xz2 = x * z2;

  cplx bracket = -4.0 * x * std::cos(tau) / (x * x - 1.0);
  bracket += (xz2 + kI * xz - z2 + kI * z + 1.0) * emiz * ei_imag(w1);
  bracket += (xz2 - kI * xz - z2 - kI * z + 1.0) * eiz * ei_imag(-w1);
  bracket += (xz2 + kI * xz + z2 - kI * z - 1.0) * emiz * ei_imag(w2);
  bracket += (xz2 - kI * xz + z2 + kI * z - 1.0) * eiz * ei_imag(-w2);
  bracket += -2.0 * xz * (z + kI) * emiz * ei_imag(z);
  bracket += 2.0 * xz * (-z + kI) * eiz * ei_imag(-z);

  cplx b = -bracket / (2.0 * kPi * xz2);
  if (x < 1.0)
    b += -kI * (1.0 - kI * z * (x + 1.0) + (x - 1.0) * z2) * eiz / xz2;
  return p.coupling() * b;
}

double prob_u2(const PhysParams& p) {
  p.validate();
  const double tau = p.tau();
  const double s = std::sin(0.5 * tau);
  // pi tau + 2 tau Si(tau) - 2 + 2 cos tau, with Si = si + pi/2
  const double bracket = 2.0 * kPi * tau + 2.0 * tau * sin_integral(tau) - 4.0 * s * s;
  return 2.0 * p.coupling() / (3.0 * kPi) * bracket;
}

double prob_v2(const PhysParams& p) {
  p.validate();
  const double tau = p.tau();
  const double s = std::sin(0.5 * tau);
  // pi tau - 2 tau Si(tau) + 2 - 2 cos tau
  const double bracket = -2.0 * tau * sin_integral(tau) + 4.0 * s * s;
  return 2.0 * p.coupling() / (3.0 * kPi) * bracket;
}

namespace {

// P(z) = sum_sigma sin w (ci z - ci|w|) - cos w (Si z - Si w), w = z + sigma tau;
// the mode integral equals -P / (4 pi^2 z).
Jet mode_P(const PhysParams& p) {
  const Jet z = Jet::variable(p.z);
  const Jet ciz = ci_abs(z), siz = si_odd(z);
  Jet sum = Jet::constant(0.0);
  for (int sigma : {+1, -1}) {
    const Jet w = z + cplx(sigma * p.tau());
    sum = sum + detail::sin(w) * (ciz - ci_abs(w)) - detail::cos(w) * (siz - si_odd(w));
  }
  return sum;
}

} // namespace

double mode_integral_M(const PhysParams& p) {
  p.validate();
  require_argument("mode_integral_M", "z(1-1/x)", p.z - p.tau(), p);
  return (-mode_P(p).v / (4.0 * kPi * kPi * p.z)).real();
}

cplx mode_sum_l(const PhysParams& p) {
  p.validate();
  require_argument("mode_sum_l", "z(1-1/x)", p.z - p.tau(), p);
  const Jet z = Jet::variable(p.z);
  const Jet h = (-1.0 / (4.0 * kPi * kPi)) * mode_P(p) * detail::reciprocal(z);
  return -4.0 * kPi * p.coupling() * std::exp(kI * p.tau()) * (h.d2 + h.d1 / p.z);
}

cplx cross_vu(const PhysParams& p) {
  p.validate();
  const double tau = p.tau();
  return (2.0 / 3.0) * p.coupling() * std::exp(kI * tau) * std::sin(tau);
}

std::pair<cplx, cplx> cross_vv_uu(const PhysParams& p) {
  p.validate();
  require_off_pole("cross_vv_uu", p);
  const Jet h = source_I_prime(p);
  const cplx vv = p.coupling() * dipole_image(h, p.z);
  if (p.x > 1.0)
    return {vv, vv};
  const Jet z = Jet::variable(p.z);
  const Jet extra = (-2.0 * kPi) * detail::sin(z) * (Jet::constant(1.0) - p.tau() * detail::reciprocal(z));
  return {vv, p.coupling() * dipole_image(h + extra, p.z)};
}

TwoPhoton two_photon(const PhysParams& p) {
  const double u2 = prob_u2(p), v2 = prob_v2(p);
  const cplx l = mode_sum_l(p), vu = cross_vu(p);
  const auto [vv, uu] = cross_vv_uu(p);
  const double g2 = u2 * v2 + std::norm(l);
  const double f2 = 2.0 * (g2 + std::norm(vu) + (uu * vv).real());
  const cplx fg = u2 * vv + v2 * std::conj(uu) + l * std::conj(vu) + std::conj(l) * vu;
  return {f2, g2, fg};
}

AmplitudeSet amplitude_set(const PhysParams& p) {
  p.validate();
  AmplitudeSet s;
  auto field = [&](const char* name, auto&& fn) {
    try {
      fn();
    } catch (const SingularPointError& e) {
      throw SingularPointError(std::string("amplitude_set field '") + name + "': " + e.what());
    } catch (const DomainError& e) {
      throw DomainError(std::string("amplitude_set field '") + name + "': " + e.what());
    }
  };
  field("a", [&] { s.a = amp_a(p); });
  field("b", [&] { s.b = amp_b(p); });
  field("u2", [&] { s.u2 = prob_u2(p); });
  field("v2", [&] { s.v2 = prob_v2(p); });
  field("l", [&] { s.l = mode_sum_l(p); });
  field("vu", [&] { s.vu = cross_vu(p); });
  field("vv/uu", [&] { std::tie(s.vv, s.uu) = cross_vv_uu(p); });
  s.g2 = s.u2 * s.v2 + std::norm(s.l);
  s.f2 = 2.0 * (s.g2 + std::norm(s.vu) + (s.uu * s.vv).real());
  s.fg = s.u2 * s.vv + s.v2 * std::conj(s.uu) + s.l * std::conj(s.vu) + std::conj(s.l) * s.vu;
  return s;
}

std::optional<std::string> guard_violation(const PhysParams& p, double guard_half_width, double arg_floor) {
  if (std::abs(p.x - 1.0) < guard_half_width) {
    std::ostringstream os;
    os.precision(12);
    os << "|x-1| = " << std::abs(p.x - 1.0) << " inside guard window " << guard_half_width
       << " (pole of b, l, vv, uu at x = 1)";
    return os.str();
  }
  const double tau = p.tau();
  const std::pair<const char*, double> args[] = {
      {"z", p.z}, {"tau=z/x", tau}, {"z(1-1/x)", p.z - tau}, {"z(1+1/x)", p.z + tau}};
  for (const auto& [name, v] : args) {
    if (std::abs(v) < arg_floor) {
      std::ostringstream os;
      os.precision(12);
      os << "si/ci/Ei argument " << name << " = " << v << " below " << arg_floor;
      return os.str();
    }
  }
  return std::nullopt;
}

namespace detail {

cplx dipole_source_I(const PhysParams& p) {
  p.validate();
  require_off_pole("dipole_source_I", p);
  return source_I(p).v;
}

cplx amp_b_from_jets(const PhysParams& p) {
  p.validate();
  require_off_pole("amp_b_from_jets", p);
  return p.coupling() * dipole_image(source_I(p), p.z);
}

} // namespace detail

} // namespace fermi
