#pragma once

#include "fermi/amplitudes.hpp"

#include <array>
#include <complex>

namespace fermi {

// Basis order {|EE>, |EG>, |GE>, |GG>}; first label is atom A.
enum Basis : int { EE = 0, EG = 1, GE = 2, GG = 3 };

struct TwoQubitPure {
  cplx amp_EE, amp_EG, amp_GE, amp_GG;

  double norm2() const;
  TwoQubitPure normalized() const;
};

using Matrix2 = std::array<std::array<cplx, 2>, 2>;

struct DensityMatrix4 {
  std::array<std::array<cplx, 4>, 4> m{};

  cplx& operator()(int i, int j) { return m[i][j]; }
  const cplx& operator()(int i, int j) const { return m[i][j]; }

  double trace() const;
  // max |rho_ij - conj(rho_ji)|
  double hermiticity_defect() const;
  // ascending
  std::array<double, 4> eigenvalues() const;

  static DensityMatrix4 from_pure(const TwoQubitPure& psi);
};

struct EntanglementReport {
  double conc_n0 = 0.0, conc_n1 = 0.0, conc_n2 = 0.0, conc_mixed = 0.0;
  double ent_n0 = 0.0, ent_n1 = 0.0, ent_n2 = 0.0;
  double mutual_info = 0.0;
  double norm_N = 1.0;
};

enum class Subsystem { A, B };

// Eigenvalues in [-kNegativeTolerance, 0) are treated as 0; below that the state is rejected.
inline constexpr double kNegativeTolerance = 1e-8;

DensityMatrix4 rho_n0(cplx a, cplx b);
DensityMatrix4 rho_n1(double u2, double v2, cplx l);
DensityMatrix4 rho_n2(double f2, double g2, cplx fg);
DensityMatrix4 rho_mixed(const AmplitudeSet& s);

double concurrence(const DensityMatrix4& rho);
double concurrence(const TwoQubitPure& psi);
double entanglement_entropy(const TwoQubitPure& psi);
Matrix2 partial_trace(const DensityMatrix4& rho, Subsystem keep);
double von_neumann_entropy(const DensityMatrix4& rho);
double von_neumann_entropy(const Matrix2& rho);
double mutual_information(const DensityMatrix4& rho);
// h(eta) in bits
double binary_entropy(double eta);

EntanglementReport report(const AmplitudeSet& s);

} // namespace fermi
