#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <complex>

namespace fermi::oracle {

using mp_real = boost::multiprecision::cpp_bin_float_50;

struct RefComplex {
  mp_real re, im;

  std::complex<double> to_double() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

enum class RefFunction { si, ci, ei_imag };

// 50-digit si (= Si - pi/2), ci, Ei(iy). Real results are returned in .re.
RefComplex ref_specfun(RefFunction which, double y);

mp_real ref_si(const mp_real& y);
mp_real ref_ci(const mp_real& y);
RefComplex ref_ei_imag(const mp_real& y);

// Power series below kRefCrossover, asymptotic expansion (cut at its smallest term) above.
inline constexpr double kRefCrossover = 55.0;

struct SiCiRef {
  mp_real si, ci;
};
SiCiRef ref_series(const mp_real& y);
// Also reports the size of the first omitted term.
SiCiRef ref_asymptotic(const mp_real& y, mp_real* truncation = nullptr);

} // namespace fermi::oracle
