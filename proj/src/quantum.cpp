#include "fermi/quantum.hpp"

#include "fermi/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fermi {

namespace {

using Mat4 = Eigen::Matrix4cd;

Mat4 to_eigen(const DensityMatrix4& rho) {
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m(i, j) = rho(i, j);
  // the solvers read one triangle only; average both so the result does not
  // depend on which one carries rounding noise
  return 0.5 * (m + m.adjoint());
}

double clamp_eigenvalue(double lambda) {
  if (lambda < -kNegativeTolerance) {
    std::ostringstream os;
    os << "density matrix eigenvalue " << lambda << " below -" << kNegativeTolerance;
    throw InvariantViolationError(os.str());
  }
  return lambda < 0.0 ? 0.0 : lambda;
}

double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

// Eigenvalues of a 2x2 Hermitian matrix, descending; the small one via det/large
// so it keeps full relative accuracy when it is many orders below the large one.
std::pair<double, double> eig2(double p, double q, cplx c) {
  const double t = p + q;
  const double disc = std::hypot(p - q, 2.0 * std::abs(c));
  const double hi = 0.5 * (t + disc);
  const double det = p * q - std::norm(c);
  const double lo = hi > 0.0 ? det / hi : 0.5 * (t - disc);
  return {hi, lo};
}

// Entropy in bits of a unit-trace spectrum. A dominant eigenvalue near 1 is
// replaced by 1 - (sum of the others) so its term keeps the others' precision.
template <std::size_t N>
double spectrum_entropy(std::array<double, N> ev) {
  for (double& v : ev)
    v = clamp_eigenvalue(v);
  const auto top = std::max_element(ev.begin(), ev.end());
  double s = 0.0, rest = 0.0;
  for (auto it = ev.begin(); it != ev.end(); ++it)
    if (it != top) {
      s -= xlog2x(*it);
      rest += *it;
    }
  if (*top > 0.5 && rest < 0.5)
    s -= (1.0 - rest) * std::log1p(-rest) / std::numbers::ln2;
  else
    s -= xlog2x(*top);
  return s;
}

bool is_x_shaped(const DensityMatrix4& rho) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && i + j != 3 && rho(i, j) != cplx(0.0))
        return false;
  return true;
}

DensityMatrix4 block_state(int i, int j, double pii, double pjj, cplx pij, double norm) {
  DensityMatrix4 rho;
  rho(i, i) = pii / norm;
  rho(j, j) = pjj / norm;
  rho(i, j) = pij / norm;
  rho(j, i) = std::conj(pij) / norm;
  return rho;
}

void check_block(const char* who, double p, double q, cplx c) {
  if (!(p >= 0.0) || !(q >= 0.0))
    throw InconsistentAmplitudesError(std::string(who) + ": negative population");
  if (!(p + q > 0.0))
    throw DegenerateInputError(std::string(who) + ": zero norm");
  const double n2 = (p + q) * (p + q);
  const double excess = (std::norm(c) - p * q) / n2;
  if (excess > 1e-9) {
    std::ostringstream os;
    os << who << ": |coherence|^2 exceeds product of populations by " << excess << " (normalized)";
    throw InconsistentAmplitudesError(os.str());
  }
}

} // namespace

double TwoQubitPure::norm2() const {
  return std::norm(amp_EE) + std::norm(amp_EG) + std::norm(amp_GE) + std::norm(amp_GG);
}

TwoQubitPure TwoQubitPure::normalized() const {
  const double n = std::sqrt(norm2());
  if (!(n > 0.0))
    throw DegenerateInputError("TwoQubitPure: zero norm");
  return {amp_EE / n, amp_EG / n, amp_GE / n, amp_GG / n};
}

double DensityMatrix4::trace() const { return (m[0][0] + m[1][1] + m[2][2] + m[3][3]).real(); }

double DensityMatrix4::hermiticity_defect() const {
  double d = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      d = std::max(d, std::abs(m[i][j] - std::conj(m[j][i])));
  return d;
}

std::array<double, 4> DensityMatrix4::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Mat4> es(to_eigen(*this), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev(0), ev(1), ev(2), ev(3)};
}

DensityMatrix4 DensityMatrix4::from_pure(const TwoQubitPure& psi) {
  const std::array<cplx, 4> v{psi.amp_EE, psi.amp_EG, psi.amp_GE, psi.amp_GG};
  DensityMatrix4 rho;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      rho(i, j) = v[i] * std::conj(v[j]);
  return rho;
}

DensityMatrix4 rho_n0(cplx a, cplx b) {
  const cplx one_a = 1.0 + a;
  const double c0 = std::norm(one_a) + std::norm(b);
  if (!(c0 > 0.0))
    throw DegenerateInputError("rho_n0: |1+a|^2 + |b|^2 = 0");
  return block_state(EG, GE, std::norm(one_a), std::norm(b), one_a * std::conj(b), c0);
}

DensityMatrix4 rho_n1(double u2, double v2, cplx l) {
  check_block("rho_n1", v2, u2, l);
  return block_state(EE, GG, v2, u2, l, u2 + v2);
}

DensityMatrix4 rho_n2(double f2, double g2, cplx fg) {
  check_block("rho_n2", f2, g2, fg);
  return block_state(EG, GE, f2, g2, fg, f2 + g2);
}

DensityMatrix4 rho_mixed(const AmplitudeSet& s) {
  const cplx one_a = 1.0 + s.a;
  const double N = std::norm(one_a) + std::norm(s.b) + s.u2 + s.v2 + s.f2 + s.g2;
  if (!(N > 0.0))
    throw DegenerateInputError("rho_mixed: N = 0");
  DensityMatrix4 rho;
  rho(EE, EE) = s.v2 / N;
  rho(GG, GG) = s.u2 / N;
  rho(EE, GG) = s.l / N;
  rho(GG, EE) = std::conj(s.l) / N;
  rho(EG, EG) = (std::norm(one_a) + s.f2) / N;
  rho(GE, GE) = (std::norm(s.b) + s.g2) / N;
  rho(EG, GE) = (one_a * std::conj(s.b) + s.fg) / N;
  rho(GE, EG) = std::conj(rho(EG, GE));
  return rho;
}

double concurrence(const DensityMatrix4& rho) {
  // The square roots of the spectrum of rho (sy x sy) rho* (sy x sy) are the singular
  // values of sqrt(rho) (sy x sy) sqrt(rho)*. Taking them from an SVD avoids the square
  // root of round-off sized eigenvalues, which would cost half the digits.
  Eigen::SelfAdjointEigenSolver<Mat4> es(to_eigen(rho));
  Eigen::Vector4d root;
  for (int i = 0; i < 4; ++i)
    root(i) = std::sqrt(clamp_eigenvalue(es.eigenvalues()(i)));
  const Mat4& V = es.eigenvectors();
  const Mat4 sqrt_rho = V * root.asDiagonal() * V.adjoint();

  Mat4 flip = Mat4::Zero();
  flip(0, 3) = -1.0;
  flip(3, 0) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  const Mat4 a = sqrt_rho * flip * sqrt_rho.conjugate();
  const Eigen::JacobiSVD<Mat4> svd(a);

  std::array<double, 4> s;
  for (int i = 0; i < 4; ++i)
    s[i] = svd.singularValues()(i);
  std::stable_sort(s.begin(), s.end(), std::greater<>());
  return std::clamp(s[0] - s[1] - s[2] - s[3], 0.0, 1.0);
}

double concurrence(const TwoQubitPure& psi) {
  const TwoQubitPure n = psi.normalized();
  return std::min(1.0, 2.0 * std::abs(n.amp_EE * n.amp_GG - n.amp_EG * n.amp_GE));
}

double binary_entropy(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw DomainError("binary_entropy: eta outside [0, 1]");
  return -xlog2x(eta) - xlog2x(1.0 - eta);
}

double entanglement_entropy(const TwoQubitPure& psi) {
  const TwoQubitPure n = psi.normalized();
  // reduced eigenvalues: det rho_A = |psi_EE psi_GG - psi_EG psi_GE|^2 for a pure state
  const double det = std::norm(n.amp_EE * n.amp_GG - n.amp_EG * n.amp_GE);
  const double hi = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * det)));
  const double lo = det / hi;
  return -xlog2x(hi) - xlog2x(lo);
}

Matrix2 partial_trace(const DensityMatrix4& rho, Subsystem keep) {
  Matrix2 r{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        r[a][b] += keep == Subsystem::A ? rho(2 * a + c, 2 * b + c) : rho(2 * c + a, 2 * c + b);
  return r;
}

double von_neumann_entropy(const Matrix2& rho) {
  const auto [hi, lo] = eig2(rho[0][0].real(), rho[1][1].real(), 0.5 * (rho[0][1] + std::conj(rho[1][0])));
  return spectrum_entropy(std::array<double, 2>{hi, lo});
}

double von_neumann_entropy(const DensityMatrix4& rho) {
  if (is_x_shaped(rho)) {
    // two independent 2x2 blocks, {EE, GG} and {EG, GE}
    const auto [h1, l1] = eig2(rho(EE, EE).real(), rho(GG, GG).real(), 0.5 * (rho(EE, GG) + std::conj(rho(GG, EE))));
    const auto [h2, l2] = eig2(rho(EG, EG).real(), rho(GE, GE).real(), 0.5 * (rho(EG, GE) + std::conj(rho(GE, EG))));
    return spectrum_entropy(std::array<double, 4>{h1, l1, h2, l2});
  }
  return spectrum_entropy(rho.eigenvalues());
}

double mutual_information(const DensityMatrix4& rho) {
  return von_neumann_entropy(partial_trace(rho, Subsystem::A)) + von_neumann_entropy(partial_trace(rho, Subsystem::B)) -
         von_neumann_entropy(rho);
}

EntanglementReport report(const AmplitudeSet& s) {
  EntanglementReport r;
  const cplx one_a = 1.0 + s.a;
  const double c0 = std::norm(one_a) + std::norm(s.b);
  if (!(c0 > 0.0))
    throw DegenerateInputError("report: |1+a|^2 + |b|^2 = 0");
  r.conc_n0 = 2.0 * std::abs(s.b) * std::abs(one_a) / c0;
  r.ent_n0 = binary_entropy(std::norm(s.b) / c0);

  const double c1 = s.u2 + s.v2;
  if (c1 > 0.0) {
    check_block("report (n=1)", s.v2, s.u2, s.l);
    r.conc_n1 = std::min(1.0, 2.0 * std::abs(s.l) / c1);
    r.ent_n1 = binary_entropy(s.v2 / c1);
  }
  const double c2 = s.f2 + s.g2;
  if (c2 > 0.0) {
    check_block("report (n=2)", s.f2, s.g2, s.fg);
    r.conc_n2 = std::min(1.0, 2.0 * std::abs(s.fg) / c2);
    r.ent_n2 = binary_entropy(s.g2 / c2);
  }
  const DensityMatrix4 rho = rho_mixed(s);
  r.conc_mixed = concurrence(rho);
  r.mutual_info = mutual_information(rho);
  r.norm_N = std::norm(one_a) + std::norm(s.b) + s.u2 + s.v2 + s.f2 + s.g2;
  return r;
}

} // namespace fermi
