#pragma once

#include <complex>

namespace fermi {

using cplx = std::complex<double>;

// Sine integral in the shifted convention si(y) = Si(y) - pi/2, y >= 0.
double sin_integral(double y);

// Cosine integral ci(y) = gamma + ln y + int_0^y (cos u - 1)/u du, y > 0.
double cos_integral(double y);

// Ei(iy) = Ci(|y|) + i sgn(y) si(|y|), y != 0.
// Branch fixed by  int_0^inf e^{i w g}/(w + b) dw = -e^{-i g b} Ei(i g b),  g, b > 0.
cplx ei_imag(double y);

// dt(u) = sin(u/2)/(pi u), dt(0) = 1/(2 pi).
double delta_t_kernel(double u);

// Odd sine integral Si(w) = int_0^w sin(u)/u du, any real w.
double sine_integral_odd(double w);

} // namespace fermi
