#include "fermi/oracle/ref_specfun.hpp"

#include "fermi/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <string>

namespace fermi::oracle {

namespace {

const mp_real& pi() {
  static const mp_real v = boost::math::constants::pi<mp_real>();
  return v;
}

const mp_real& euler() {
  static const mp_real v = boost::math::constants::euler<mp_real>();
  return v;
}

} // namespace

SiCiRef ref_series(const mp_real& y) {
  const mp_real eps = std::numeric_limits<mp_real>::epsilon();
  mp_real si_sum = 0, cin_sum = 0;
  mp_real term = y; // y^(2k+1)/(2k+1)!
  for (int k = 0; k < 2000; ++k) {
    const mp_real si_t = term / (2 * k + 1);
    const mp_real even = term * y / (2 * k + 2);
    const mp_real cin_t = even / (2 * k + 2);
    si_sum += si_t;
    cin_sum += cin_t;
    term = -even * y / (2 * k + 3);
    if (abs(si_t) <= eps * abs(si_sum) * 1e-3 && abs(cin_t) <= eps * abs(cin_sum) * 1e-3)
      break;
  }
  return {si_sum - pi() / 2, euler() + log(y) - cin_sum};
}

SiCiRef ref_asymptotic(const mp_real& y, mp_real* truncation) {
  // f ~ (1/y) sum (-1)^k (2k)!/y^(2k),  g ~ (1/y^2) sum (-1)^k (2k+1)!/y^(2k)
  const mp_real y2 = y * y;
  mp_real f = 0, g = 0;
  mp_real tf = 1 / y, tg = 1 / y2;
  mp_real last = abs(tf) + abs(tg);
  for (int k = 0; k < 10000; ++k) {
    f += tf;
    g += tg;
    const mp_real nf = -tf * (2 * k + 1) * (2 * k + 2) / y2;
    const mp_real ng = -tg * (2 * k + 2) * (2 * k + 3) / y2;
    const mp_real size = abs(nf) + abs(ng);
    if (size >= last || size < std::numeric_limits<mp_real>::epsilon() * 1e-5) {
      last = size;
      break;
    }
    last = size;
    tf = nf;
    tg = ng;
  }
  if (truncation)
    *truncation = last;
  const mp_real s = sin(y), c = cos(y);
  return {-f * c - g * s, f * s - g * c};
}

namespace {

SiCiRef si_ci(const mp_real& y) { return y < kRefCrossover ? ref_series(y) : ref_asymptotic(y); }

} // namespace

mp_real ref_si(const mp_real& y) {
  if (y < 0)
    throw DomainError("ref_si: argument must be >= 0");
  if (y == 0)
    return -pi() / 2;
  return si_ci(y).si;
}

mp_real ref_ci(const mp_real& y) {
  if (!(y > 0))
    throw DomainError("ref_ci: argument must be > 0");
  return si_ci(y).ci;
}

RefComplex ref_ei_imag(const mp_real& y) {
  if (y == 0)
    throw DomainError("ref_ei_imag: argument must be nonzero");
  const SiCiRef v = si_ci(abs(y));
  return {v.ci, y > 0 ? v.si : mp_real(-v.si)};
}

RefComplex ref_specfun(RefFunction which, double y) {
  const mp_real my = y;
  switch (which) {
  case RefFunction::si:
    return {ref_si(my), 0};
  case RefFunction::ci:
    return {ref_ci(my), 0};
  case RefFunction::ei_imag:
    return ref_ei_imag(my);
  }
  throw DomainError("ref_specfun: unknown function");
}

} // namespace fermi::oracle
