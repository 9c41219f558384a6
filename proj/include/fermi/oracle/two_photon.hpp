#pragma once

// Brute-force photon-mode sums for the one- and two-photon kernels.
//
// A mode is (frequency s in units of Omega, direction, polarization). The time
// integrals of each emission are done exactly; directions and polarizations are
// summed analytically, which leaves a radial weight per pair of atoms:
//   same atom:   (1/4pi^2) * int dOmega sum_pol |e.d|^2 = (1/4pi^2) (8pi/3)
//   other atom:  (1/4pi^2) * s^3 * 4pi [j0(zs) - j1(zs)/(zs)]   (dipoles normal to L)
// The inter-atomic sums only converge in the Abel sense, so their radial weight
// carries a smooth C-infinity window that switches off over [k_max/2, k_max].
// Everything is in units of alpha dtilde^2 per photon.

#include <complex>
#include <cstddef>

namespace fermi::oracle {

using cplx = std::complex<double>;

struct ModeGrid {
  double k_max = 2.0e4;     // radial cutoff (units of Omega)
  double resolution = 6.0;  // panel width * highest frequency of the integrand
  double max_panel = 0.5;
  double tolerance = 1e-3;  // allowed relative truncation bound on u2, v2
};

struct BruteTwoPhoton {
  double u2 = 0.0, v2 = 0.0;
  cplx vu, l, vv, uu;
  cplx vu_B;  // v_B u_B*, same-atom kernel of the second atom
  cplx l_AB;  // v_A u_B*, the mirror partner of l
  double f2 = 0.0, g2 = 0.0;
  cplx fg;
  double tail_bound = 0.0;  // bound on the truncated same-atom tail beyond k_max
  std::size_t radial_nodes = 0;
};

// Kernels as single radial sums, then f2, g2, fg as the double sums over the
// product grid (k, k') with the photons' time integrals taken as full products
// (theta(t1-t2) + theta(t2-t1) = 1). Unordered photon pairs: norm = (1/2) sum_{k,k'}.
// Throws ConvergenceError when tail_bound exceeds tolerance * min(u2, v2).
BruteTwoPhoton brute_two_photon(double z, double x, const ModeGrid& grid = {});

struct OrderingResidual {
  double f2_product = 0.0, f2_ordered = 0.0;
  cplx fg_product, fg_ordered;
  std::size_t radial_nodes = 0;
};

// Literal 2D double sum on a coarse grid, once with the product time integrals
// and once with the emission order fixed (g -> e before e -> g inside each atom).
// Only the difference between the two is meaningful.
OrderingResidual ordering_residual(double z, double x, double k_max = 20.0, double resolution = 3.0);

} // namespace fermi::oracle
