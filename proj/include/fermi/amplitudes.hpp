#pragma once

#include "fermi/specfun.hpp"

#include <optional>
#include <string>
#include <utility>

namespace fermi {

inline constexpr double kFineStructure = 7.2973525693e-3;

// Closed forms refuse special-function arguments below this magnitude: z(1 - 1/x)
// carries no correct digits once |x - 1| approaches machine epsilon.
inline constexpr double kArgumentFloor = 1e-13;

struct PhysParams {
  double z = 10.0;  // Omega L / c
  double x = 2.0;   // L / (c t)
  double dtilde = 5e-3;
  double alpha = kFineStructure;
  double cutoff_ratio = 366.0;

  double tau() const { return z / x; }
  // alpha * dtilde^2, the order of every single-photon quantity
  double coupling() const { return alpha * dtilde * dtilde; }
  void validate() const;
};

struct AmplitudeSet {
  cplx a, b;
  double u2 = 0.0, v2 = 0.0;
  cplx l;
  cplx vu; // sum v_A u_A*
  cplx vv; // sum v_A v_B*
  cplx uu; // sum u_A u_B*
  double f2 = 0.0, g2 = 0.0;
  cplx fg;
};

struct TwoPhoton {
  double f2, g2;
  cplx fg;
};

cplx amp_a(const PhysParams& p);
cplx amp_b(const PhysParams& p);
double prob_u2(const PhysParams& p);
double prob_v2(const PhysParams& p);

// int_0^inf dk sin(kL)/L dt(Omega+ck) dt(Omega-ck) in dimensionless form,
//   int_0^inf ds sin(zs)/z (cos(s tau) - cos tau) / (2 pi^2 (1 - s^2)).
// The phase e^{i tau} that accompanies it in l is not included.
double mode_integral_M(const PhysParams& p);

cplx mode_sum_l(const PhysParams& p);
cplx cross_vu(const PhysParams& p);
// (sum v_A v_B*, sum u_A u_B*)
std::pair<cplx, cplx> cross_vv_uu(const PhysParams& p);
TwoPhoton two_photon(const PhysParams& p);
AmplitudeSet amplitude_set(const PhysParams& p);

// Reason a point must be skipped by sweeps, or nullopt. Checks the |x-1| window and
// every si/ci/Ei argument against arg_floor.
std::optional<std::string> guard_violation(const PhysParams& p, double guard_half_width,
                                           double arg_floor = 1e-9);

namespace detail {
// Scalar function of z (tau fixed) whose dipole-operator image is b / (alpha dtilde^2).
cplx dipole_source_I(const PhysParams& p);
// b from jet differentiation of dipole_source_I; cross-check of the expanded form.
cplx amp_b_from_jets(const PhysParams& p);
} // namespace detail

} // namespace fermi
