#include "fermi/oracle/two_photon.hpp"

#include "fermi/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace fermi::oracle {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);
constexpr double kSameAtom = (8.0 * kPi / 3.0) / (4.0 * kPi * kPi);

struct Radial {
  std::vector<double> s, w;
};

Radial radial_grid(double k_max, double omega_max, double resolution, double max_panel) {
  using GL = boost::math::quadrature::gauss<double, 16>;
  const double h_target = std::min(max_panel, resolution / omega_max);
  const auto panels = static_cast<std::size_t>(std::ceil(k_max / h_target));
  const double h = k_max / static_cast<double>(panels);
  const auto& xs = GL::abscissa();
  const auto& ws = GL::weights();
  Radial r;
  r.s.reserve(panels * 16);
  r.w.reserve(panels * 16);
  for (std::size_t p = 0; p < panels; ++p) {
    const double c = (static_cast<double>(p) + 0.5) * h;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      // abscissae are stored for the positive half; 0 appears only for odd orders
      r.s.push_back(c + 0.5 * h * xs[i]);
      r.w.push_back(0.5 * h * ws[i]);
      r.s.push_back(c - 0.5 * h * xs[i]);
      r.w.push_back(0.5 * h * ws[i]);
    }
  }
  return r;
}

// smooth step: 1 on [0, 1/2], 0 on [1, inf)
double window(double t) {
  if (t <= 0.5)
    return 1.0;
  if (t >= 1.0)
    return 0.0;
  const double u = 2.0 * t - 1.0;
  const double a = std::exp(-1.0 / (1.0 - u)), b = std::exp(-1.0 / u);
  return a / (a + b);
}

// j0(q) - j1(q)/q
double transverse_profile(double q) {
  if (q < 0.05) {
    const double q2 = q * q;
    return 2.0 / 3.0 - q2 * (2.0 / 15.0 - q2 * (1.0 / 140.0 - q2 / 5670.0));
  }
  const double sq = std::sin(q), cq = std::cos(q);
  return sq / q - (sq - q * cq) / (q * q * q);
}

double inter_weight(double s, double z, double k_max) {
  return s * s * s * 4.0 * kPi * transverse_profile(z * s) / (4.0 * kPi * kPi) * window(s / k_max);
}

// int_0^tau e^{i q t} dt
cplx time_integral(double q, double tau) {
  if (std::abs(q * tau) < 1e-6)
    return tau * (1.0 + 0.5 * kI * q * tau);
  return (std::exp(kI * (q * tau)) - 1.0) / (kI * q);
}

enum Kind { U = 0, V = 1 };
enum Atom { A = 0, B = 1 };

cplx emission(Kind k, double s, double tau) { return time_integral(k == U ? s - 1.0 : s + 1.0, tau); }

struct Term {
  Atom atom1;
  Kind kind1;  // photon k
  Atom atom2;
  Kind kind2;  // photon k'
};

// kernels[same/inter][X][Y] = sum_k mu X(k) Y(k)*
using KernelTable = std::array<std::array<std::array<cplx, 2>, 2>, 2>;

cplx kernel(const KernelTable& t, Atom x, Kind kx, Atom y, Kind ky) { return t[x == y ? 0 : 1][kx][ky]; }

// (1/2) sum_{k,k'} [F(k,k') + F(k',k)] [G(k,k') + G(k',k)]*
cplx pair_sum(const KernelTable& t, const std::vector<Term>& f, const std::vector<Term>& g) {
  cplx acc = 0.0;
  for (const auto& a : f)
    for (const auto& b : g) {
      acc += kernel(t, a.atom1, a.kind1, b.atom1, b.kind1) * kernel(t, a.atom2, a.kind2, b.atom2, b.kind2);
      acc += kernel(t, a.atom1, a.kind1, b.atom2, b.kind2) * kernel(t, a.atom2, a.kind2, b.atom1, b.kind1);
    }
  return acc;
}

void require_point(const char* who, double z, double x) {
  if (!(z > 0.0) || !(x > 0.0) || !std::isfinite(z) || !std::isfinite(x)) {
    std::ostringstream os;
    os << who << ": need z > 0 and x > 0, got z = " << z << ", x = " << x;
    throw DomainError(os.str());
  }
}

} // namespace

BruteTwoPhoton brute_two_photon(double z, double x, const ModeGrid& grid) {
  require_point("brute_two_photon", z, x);
  const double tau = z / x;
  const auto r = radial_grid(grid.k_max, z + 2.0 * tau + 1.0, grid.resolution, grid.max_panel);

  KernelTable t{};
  for (std::size_t i = 0; i < r.s.size(); ++i) {
    const double s = r.s[i];
    const std::array<cplx, 2> e{emission(U, s, tau), emission(V, s, tau)};
    const std::array<double, 2> mu{kSameAtom * r.w[i], inter_weight(s, z, grid.k_max) * r.w[i]};
    for (int m = 0; m < 2; ++m)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          t[m][a][b] += mu[m] * e[a] * std::conj(e[b]);
  }

  BruteTwoPhoton out;
  out.radial_nodes = r.s.size();
  out.u2 = t[0][U][U].real();
  out.v2 = t[0][V][V].real();
  out.vu = kernel(t, A, V, A, U);
  out.vu_B = kernel(t, B, V, B, U);
  out.l = kernel(t, B, V, A, U);
  out.l_AB = kernel(t, A, V, B, U);
  out.vv = kernel(t, A, V, B, V);
  out.uu = kernel(t, A, U, B, U);

  const std::vector<Term> f{{A, U, A, V}, {B, V, B, U}};
  const std::vector<Term> g{{A, U, B, V}};
  out.f2 = pair_sum(t, f, f).real();
  out.g2 = pair_sum(t, g, g).real();
  out.fg = pair_sum(t, f, g);

  // |int_0^tau e^{iqt} dt|^2 <= 4/q^2, so the same-atom tail is below 4 mu/(k_max - 1)
  out.tail_bound = 4.0 * kSameAtom / (grid.k_max - 1.0);
  const double scale = std::min(out.u2, out.v2);
  if (!(out.tail_bound <= grid.tolerance * scale)) {
    std::ostringstream os;
    os << "brute_two_photon: tail bound " << out.tail_bound << " exceeds " << grid.tolerance << " * min(u2, v2) = "
       << grid.tolerance * scale << " at z = " << z << ", x = " << x << "; raise k_max";
    throw ConvergenceError(os.str());
  }
  return out;
}

OrderingResidual ordering_residual(double z, double x, double k_max, double resolution) {
  require_point("ordering_residual", z, x);
  const double tau = z / x;
  const auto r = radial_grid(k_max, z + 2.0 * tau + 1.0, resolution, 0.5);
  const std::size_t n = r.s.size();

  std::vector<cplx> eu(n), ev(n);
  std::vector<double> ms(n), mi(n);
  for (std::size_t i = 0; i < n; ++i) {
    eu[i] = emission(U, r.s[i], tau);
    ev[i] = emission(V, r.s[i], tau);
    ms[i] = kSameAtom * r.w[i];
    mi[i] = inter_weight(r.s[i], z, k_max) * r.w[i];
  }
  // atom goes g -> e (v photon, frequency sv) and later e -> g (u photon, su)
  auto ordered = [&](std::size_t iv, std::size_t iu) {
    const double sv = r.s[iv], su = r.s[iu];
    return (time_integral(su + sv, tau) - eu[iu]) / (kI * (sv + 1.0));
  };

  OrderingResidual out;
  out.radial_nodes = n;
  cplx f2p = 0.0, f2o = 0.0, fgp = 0.0, fgo = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // both photons from one atom: k = i, k' = j, symmetrized over labels
      const cplx fp = eu[i] * ev[j] + eu[j] * ev[i];
      const cplx fo = ordered(j, i) + ordered(i, j);
      // photon k from A (u) and k' from B (v), plus the label swap
      const cplx g1 = eu[i] * ev[j], g2 = eu[j] * ev[i];
      const double same = ms[i] * ms[j], inter = mi[i] * mi[j];
      // F_A and F_B carry the same time dependence: |F_A + F_B|^2 over atoms
      f2p += 2.0 * (same + inter) * std::norm(fp);
      f2o += 2.0 * (same + inter) * std::norm(fo);
      // F_A (A,A) and F_B (B,B) against G terms (A,B) and (B,A)
      const double wab = ms[i] * mi[j] + mi[i] * ms[j];
      fgp += wab * fp * std::conj(g1 + g2);
      fgo += wab * fo * std::conj(g1 + g2);
    }
  }
  out.f2_product = 0.5 * f2p.real();
  out.f2_ordered = 0.5 * f2o.real();
  out.fg_product = 0.5 * fgp;
  out.fg_ordered = 0.5 * fgo;
  return out;
}

} // namespace fermi::oracle
