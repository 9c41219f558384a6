#pragma once

// Oracles for the single-photon mode integrals. All returned amplitudes are in
// units of alpha dtilde^2 (the coupling factors out of every closed form).

#include "fermi/oracle/quadrature.hpp"

#include <complex>

namespace fermi::oracle {

using cplx = std::complex<double>;

// int_0^inf dw e^{i g w}/(w + b) with the regulator e^{-eps w}, eps -> 0 by
// Richardson extrapolation. Closed form: -e^{-i g b} Ei(i g b).
QuadratureResult<cplx> regulated_shifted_fourier(double gamma, double beta, double tol = 1e-8);
// Principal value int_0^inf dw e^{i g w}/(w - b). Closed form: -e^{i g b} (Ei(-i g b) - i pi).
QuadratureResult<cplx> regulated_pole_fourier(double gamma, double beta, double tol = 1e-8);

// int_0^inf ds sin(zs)/z (cos s tau - cos tau)/(2 pi^2 (1 - s^2)), tau = z/x, built
// from the finite-time kernels as written (no closed-form pieces).
QuadratureResult<double> quad_M(double z, double x, double tol = 1e-12);

// l from quad_M by central differences in z at fixed tau with Richardson extrapolation.
cplx fd_check_l(double z, double x, double step = 0.05);

enum class Emission { u, v };
// Emission probability as a direct mode integral: angular factor of the transverse
// projector (computed numerically) times int_0^inf |int_0^tau e^{i(s -+ 1) t} dt|^2 ds.
QuadratureResult<double> quad_uv2(double z, double x, Emission which, double tol = 1e-12);

// I(z, x) = -(1/z) int_0^inf sin(zs) [K(s-1) + K(s+1)] ds with
// K(q) = -i tau/q + (1 - e^{-i q tau})/q^2: the scalar whose dipole image is b.
QuadratureResult<cplx> quad_I(double z, double x, double tol = 1e-12);

// I from the tabulated-integral closed form, evaluated with the 50-digit functions.
cplx reference_I(double z, double x);

// b by central finite differences of reference_I in z at fixed t (tau fixed),
// extrapolated over step, step/2, step/4, step/8. Throws ConvergenceError when
// the extrapolated values disagree by more than 1e-6 relative.
cplx fd_check_b(double z, double x, double step = 0.05);
// Plain second-order central difference with the given step (no extrapolation).
cplx fd_b_central(double z, double x, double step);

} // namespace fermi::oracle
