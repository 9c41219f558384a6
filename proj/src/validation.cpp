#include "fermi/validation.hpp"

#include "fermi/errors.hpp"
#include "fermi/oracle/mode_integrals.hpp"
#include "fermi/oracle/ref_specfun.hpp"
#include "fermi/quantum.hpp"
#include "fermi/specfun.hpp"
#include "fermi/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace fermi {

namespace {

constexpr double kPi = std::numbers::pi;

std::string at(double z, double x) {
  std::ostringstream os;
  os.precision(10);
  os << "z=" << z << " x=" << x;
  return os.str();
}

std::string at(const PhysParams& p) { return at(p.z, p.x); }

class Family {
public:
  explicit Family(std::string name) : start_(std::chrono::steady_clock::now()) { report_.name = std::move(name); }

  // |got - expected| <= tol * |expected| + abs_tol
  void close(const std::string& quantity, const std::string& point, cplx expected, cplx got, double tol,
             double abs_tol = 0.0) {
    ++report_.checks;
    const double d = std::abs(got - expected);
    if (!(d <= tol * std::abs(expected) + abs_tol)) {
      const bool real = expected.imag() == 0.0 && got.imag() == 0.0;
      fail(quantity + (real ? "" : " (modulus shown)"), point, real ? expected.real() : std::abs(expected),
           real ? got.real() : std::abs(got), tol);
    }
  }

  // value >= bound
  void at_least(const std::string& quantity, const std::string& point, double value, double bound) {
    ++report_.checks;
    if (!(value >= bound))
      fail(quantity + " >= bound", point, bound, value, 0.0);
  }

  void at_most(const std::string& quantity, const std::string& point, double value, double bound) {
    ++report_.checks;
    if (!(value <= bound))
      fail(quantity + " <= bound", point, bound, value, 0.0);
  }

  void fail(const std::string& quantity, const std::string& point, double expected, double got, double tol) {
    report_.failures.push_back({quantity, point, expected, got, tol});
  }

  void error(const std::string& quantity, const std::string& point, const std::exception& e) {
    ++report_.checks;
    fail(quantity + " raised: " + e.what(), point, 0.0, std::nan(""), 0.0);
  }

  void note(std::string line) { report_.notes.push_back(std::move(line)); }

  FamilyReport finish() {
    report_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(report_);
  }

private:
  FamilyReport report_;
  std::chrono::steady_clock::time_point start_;
};

PhysParams point(double z, double x) {
  PhysParams p;
  p.z = z;
  p.x = x;
  return p;
}

// preset sweep grid minus the guard windows
std::vector<PhysParams> sweep_points() {
  const SweepSpec spec = preset("fig1");
  std::vector<PhysParams> out;
  for (double z : spec.z_values)
    for (double x : x_grid(spec)) {
      PhysParams p = spec.params;
      p.z = z;
      p.x = x;
      if (!guard_violation(p, spec.guard_half_width))
        out.push_back(p);
    }
  return out;
}

FamilyReport check_specfun(const Tolerances& t) {
  Family f("specfun_reference");
  const int n = t.specfun_points;
  for (int i = 0; i < n; ++i) {
    const double y = std::pow(10.0, -6.0 + 9.0 * i / (n - 1));
    const std::string pt = "y=" + std::to_string(y);
    const auto si = oracle::ref_specfun(oracle::RefFunction::si, y).to_double();
    const auto ci = oracle::ref_specfun(oracle::RefFunction::ci, y).to_double();
    const auto ep = oracle::ref_specfun(oracle::RefFunction::ei_imag, y).to_double();
    const auto em = oracle::ref_specfun(oracle::RefFunction::ei_imag, -y).to_double();
    f.close("si", pt, si.real(), sin_integral(y), t.specfun_rel, t.specfun_abs);
    f.close("ci", pt, ci.real(), cos_integral(y), t.specfun_rel, t.specfun_abs);
    f.close("ei_imag(+y)", pt, ep, ei_imag(y), t.specfun_rel, t.specfun_abs);
    f.close("ei_imag(-y)", pt, em, ei_imag(-y), t.specfun_rel, t.specfun_abs);
  }
  return f.finish();
}

FamilyReport check_ei_identities(const Tolerances& t) {
  Family f("ei_identities");
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  const cplx i(0.0, 1.0);
  for (int k = 0; k < t.ei_pairs; ++k) {
    const double g = u(rng), b = u(rng);
    const std::string pt = "gamma=" + std::to_string(g) + " beta=" + std::to_string(b);
    try {
      const auto shifted = oracle::regulated_shifted_fourier(g, b, t.ei_identity * 1e-2);
      f.close("int e^{i g w}/(w+b)", pt, -std::exp(-i * (g * b)) * ei_imag(g * b), shifted.value, 0.0, t.ei_identity);
      const auto pole = oracle::regulated_pole_fourier(g, b, t.ei_identity * 1e-2);
      f.close("PV int e^{i g w}/(w-b)", pt, -std::exp(i * (g * b)) * (ei_imag(-g * b) - i * kPi), pole.value, 0.0,
              t.ei_identity);
    } catch (const std::exception& e) {
      f.error("regulated quadrature", pt, e);
    }
  }
  return f.finish();
}

FamilyReport check_M(const Tolerances& t, const ClosedForms& cf) {
  Family f("mode_integral_M");
  for (double z : {5.0, 10.0, 15.0})
    for (double x : {0.5, 0.8, 1.2, 2.0}) {
      const PhysParams p = point(z, x);
      try {
        const auto q = oracle::quad_M(z, x, 1e-12);
        f.close("M", at(p), q.value, cf.mode_integral_M(p), t.quad_M);
      } catch (const std::exception& e) {
        f.error("M", at(p), e);
      }
    }
  return f.finish();
}

FamilyReport check_uv2(const Tolerances& t, const ClosedForms& cf) {
  Family f("emission_probabilities");
  auto grid = validation_grid();
  grid.push_back(point(10.0, 1.0));
  for (const auto& p : grid) {
    try {
      const double c = p.coupling();
      f.close("u2", at(p), c * oracle::quad_uv2(p.z, p.x, oracle::Emission::u).value, cf.prob_u2(p), t.quad_uv2);
      f.close("v2", at(p), c * oracle::quad_uv2(p.z, p.x, oracle::Emission::v).value, cf.prob_v2(p), t.quad_uv2);
    } catch (const std::exception& e) {
      f.error("u2/v2", at(p), e);
    }
  }
  return f.finish();
}

FamilyReport check_source_I(const Tolerances& t, const ClosedForms& cf) {
  Family f("dipole_source_I");
  for (const auto& p : validation_grid()) {
    try {
      const auto q = oracle::quad_I(p.z, p.x);
      f.close("I (quadrature)", at(p), q.value, cf.dipole_source_I(p), t.source_I);
      f.close("I (50-digit)", at(p), oracle::reference_I(p.z, p.x), cf.dipole_source_I(p), t.source_I);
    } catch (const std::exception& e) {
      f.error("I", at(p), e);
    }
  }
  return f.finish();
}

FamilyReport check_fd_b(const Tolerances& t, const ClosedForms& cf) {
  Family f("amp_b_finite_difference");
  for (const auto& p : validation_grid()) {
    try {
      const cplx fd = p.coupling() * oracle::fd_check_b(p.z, p.x);
      f.close("b", at(p), fd, cf.amp_b(p), p.x > 1.0 ? t.fd_b_outside : t.fd_b_inside);
    } catch (const std::exception& e) {
      f.error("b", at(p), e);
    }
  }
  return f.finish();
}

FamilyReport check_fd_l(const Tolerances& t, const ClosedForms& cf) {
  Family f("mode_sum_l_finite_difference");
  for (const auto& p : validation_grid()) {
    try {
      f.close("l", at(p), p.coupling() * oracle::fd_check_l(p.z, p.x), cf.mode_sum_l(p), t.fd_l);
    } catch (const std::exception& e) {
      f.error("l", at(p), e);
    }
  }
  return f.finish();
}

FamilyReport check_grid_kernels(const Tolerances& t, const ClosedForms& cf) {
  Family f("mode_grid_kernels");
  for (const auto& p : validation_grid()) {
    try {
      const auto b = oracle::brute_two_photon(p.z, p.x, t.mode_grid);
      const double c = p.coupling();
      const double tail = c * b.tail_bound;
      const auto [vv, uu] = cf.cross_vv_uu(p);
      const cplx l = cf.mode_sum_l(p);
      const cplx vu = cf.cross_vu(p);
      f.close("u2", at(p), c * b.u2, cf.prob_u2(p), t.grid_kernel, tail);
      f.close("v2", at(p), c * b.v2, cf.prob_v2(p), t.grid_kernel, tail);
      f.close("vu", at(p), c * b.vu, vu, t.grid_kernel, tail);
      f.close("v_B u_B* = vu", at(p), c * b.vu_B, vu, t.grid_kernel, tail);
      f.close("l", at(p), c * b.l, l, t.grid_kernel);
      f.close("v_A u_B* = l", at(p), c * b.l_AB, l, t.grid_kernel);
      f.close("vv", at(p), c * b.vv, vv, t.grid_kernel);
      f.close("uu", at(p), c * b.uu, uu, t.grid_kernel);
    } catch (const std::exception& e) {
      f.error("mode-grid kernels", at(p), e);
    }
  }
  return f.finish();
}

FamilyReport check_grid_two_photon(const Tolerances& t, const ClosedForms& cf) {
  Family f("mode_grid_two_photon");
  for (const auto& p : validation_grid()) {
    try {
      const auto b = oracle::brute_two_photon(p.z, p.x, t.mode_grid);
      const double c2 = p.coupling() * p.coupling();
      const TwoPhoton tp = cf.two_photon(p);
      f.close("f2", at(p), c2 * b.f2, tp.f2, t.grid_two_photon);
      f.close("g2", at(p), c2 * b.g2, tp.g2, t.grid_two_photon);
      f.close("fg", at(p), c2 * b.fg, tp.fg, t.grid_two_photon);
      // the double sum itself must obey the g2 identity
      f.close("g2 - (u2 v2 + |l|^2) on the grid", at(p), b.u2 * b.v2 + std::norm(b.l), b.g2, 1e-12);
    } catch (const std::exception& e) {
      f.error("mode-grid two-photon", at(p), e);
    }
  }
  try {
    const auto r = oracle::ordering_residual(5.0, 0.8);
    std::ostringstream os;
    os.precision(4);
    os << "exact emission order vs product time integrals at z=5 x=0.8 (" << r.radial_nodes
       << " radial nodes): f2 ratio " << r.f2_ordered / r.f2_product << ", |fg| ratio "
       << std::abs(r.fg_ordered) / std::abs(r.fg_product) << " (reported, no target)";
    f.note(os.str());
  } catch (const std::exception& e) {
    f.note(std::string("ordering residual unavailable: ") + e.what());
  }
  return f.finish();
}

struct GridState {
  PhysParams p;
  AmplitudeSet s;
};

std::vector<GridState> sweep_amplitudes(Family& f) {
  std::vector<GridState> out;
  for (const auto& p : sweep_points()) {
    try {
      out.push_back({p, amplitude_set(p)});
    } catch (const std::exception& e) {
      f.error("amplitude_set", at(p), e);
    }
  }
  return out;
}

FamilyReport check_g2_identity(const Tolerances& t, const ClosedForms& cf) {
  Family f("g2_identity");
  for (const auto& p : sweep_points()) {
    try {
      const TwoPhoton tp = cf.two_photon(p);
      const cplx l = cf.mode_sum_l(p);
      f.close("g2 - (u2 v2 + |l|^2)", at(p), cf.prob_u2(p) * cf.prob_v2(p) + std::norm(l), tp.g2, t.g2_identity);
    } catch (const std::exception& e) {
      f.error("g2 identity", at(p), e);
    }
  }
  return f.finish();
}

FamilyReport check_positivity(const Tolerances&) {
  Family f("positivity");
  for (const auto& [p, s] : sweep_amplitudes(f)) {
    f.at_least("u2", at(p), s.u2, 0.0);
    f.at_least("v2", at(p), s.v2, 0.0);
    f.at_least("f2", at(p), s.f2, 0.0);
    f.at_least("g2", at(p), s.g2, 0.0);
    f.at_most("|vu| - sqrt(u2 v2)", at(p), std::abs(s.vu) - std::sqrt(s.u2 * s.v2), 1e-12);
  }
  return f.finish();
}


// smallest eigenvalue of the normalized 2x2 block [[p, c], [c*, q]]
double block_min_eigenvalue(double p, double q, cplx c) {
  const double s = p + q;
  return 0.5 * (s - std::hypot(p - q, 2.0 * std::abs(c))) / s;
}

void check_state(Family& f, const std::string& name, const std::string& pt, const DensityMatrix4& rho,
                 const Tolerances& t) {
  f.at_most(name + " |Tr - 1|", pt, std::abs(rho.trace() - 1.0), t.trace);
  f.at_most(name + " hermiticity defect", pt, rho.hermiticity_defect(), t.hermiticity);
  f.at_least(name + " min eigenvalue", pt, rho.eigenvalues()[0], t.min_eigenvalue);
}

FamilyReport check_state_invariants(const Tolerances& t) {
  Family f("state_invariants");
  for (const auto& [p, s] : sweep_amplitudes(f)) {
    const std::string pt = at(p);
    check_state(f, "rho_n0", pt, rho_n0(s.a, s.b), t);
    // the sector builders reject blocks that are not positive; report the eigenvalue they refused
    try {
      check_state(f, "rho_n1", pt, rho_n1(s.u2, s.v2, s.l), t);
    } catch (const InconsistentAmplitudesError&) {
      f.at_least("rho_n1 min eigenvalue", pt, block_min_eigenvalue(s.v2, s.u2, s.l), t.min_eigenvalue);
    }
    try {
      check_state(f, "rho_n2", pt, rho_n2(s.f2, s.g2, s.fg), t);
    } catch (const InconsistentAmplitudesError&) {
      f.at_least("rho_n2 min eigenvalue", pt, block_min_eigenvalue(s.f2, s.g2, s.fg), t.min_eigenvalue);
    }
    check_state(f, "rho_mixed", pt, rho_mixed(s), t);
  }
  return f.finish();
}

FamilyReport check_sector_concurrence(const Tolerances& t) {
  Family f("sector_concurrence");
  long skipped = 0;
  for (const auto& [p, s] : sweep_amplitudes(f)) {
    const std::string pt = at(p);
    EntanglementReport r;
    try {
      r = report(s);
    } catch (const InconsistentAmplitudesError&) {
      ++skipped; // counted by state_invariants
      continue;
    }
    f.close("conc_n0 closed vs Wootters", pt, concurrence(rho_n0(s.a, s.b)), r.conc_n0, 0.0, t.measure);
    f.close("conc_n1 closed vs Wootters", pt, concurrence(rho_n1(s.u2, s.v2, s.l)), r.conc_n1, 0.0, t.measure);
    f.close("conc_n2 closed vs Wootters", pt, concurrence(rho_n2(s.f2, s.g2, s.fg)), r.conc_n2, 0.0, t.measure);
    const DensityMatrix4 mix = rho_mixed(s);
    const double sab = von_neumann_entropy(mix);
    const double sa = von_neumann_entropy(partial_trace(mix, Subsystem::A));
    const double sb = von_neumann_entropy(partial_trace(mix, Subsystem::B));
    f.at_least("S(rho_AB)", pt, sab, 0.0);
    f.at_least("S(rho_A)", pt, sa, 0.0);
    f.at_least("S(rho_B)", pt, sb, 0.0);
    f.at_most("S_AB - S_A - S_B (subadditivity)", pt, sab - sa - sb, t.measure);
    f.at_least("mutual_info", pt, r.mutual_info, 0.0);
    for (double e : {r.ent_n0, r.ent_n1, r.ent_n2})
      f.at_least("sector entropy", pt, e, 0.0);
  }
  if (skipped > 0)
    f.note(std::to_string(skipped) + " grid points without a positive state skipped (see state_invariants)");
  return f.finish();
}

cplx random_normal(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  return {re, n(rng)};
}

using Matrix4 = std::array<std::array<cplx, 4>, 4>;

Matrix4 local_unitary(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  auto su2 = [&] {
    const double th = 0.25 * ang(rng), a = ang(rng), b = ang(rng);
    const cplx i(0.0, 1.0);
    Matrix2 u{};
    u[0][0] = std::exp(i * a) * std::cos(th);
    u[0][1] = std::exp(i * b) * std::sin(th);
    u[1][0] = -std::exp(-i * b) * std::sin(th);
    u[1][1] = std::exp(-i * a) * std::cos(th);
    return u;
  };
  const Matrix2 ua = su2(), ub = su2();
  Matrix4 u{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      u[i][j] = ua[i / 2][j / 2] * ub[i % 2][j % 2];
  return u;
}

DensityMatrix4 conjugate_by(const Matrix4& u, const DensityMatrix4& rho) {
  DensityMatrix4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          acc += u[i][k] * rho(k, l) * std::conj(u[j][l]);
      out(i, j) = acc;
    }
  return out;
}

FamilyReport check_measures(const Tolerances& t) {
  Family f("entanglement_measures");
  std::mt19937_64 rng(77);
  for (int k = 0; k < t.pure_states; ++k) {
    const TwoQubitPure psi =
        TwoQubitPure{random_normal(rng), random_normal(rng), random_normal(rng), random_normal(rng)}.normalized();
    f.close("Wootters vs 2|ad - bc|", "pure state #" + std::to_string(k), concurrence(psi),
            concurrence(DensityMatrix4::from_pure(psi)), 0.0, t.measure);
  }

  const double r = 1.0 / std::sqrt(2.0);
  const auto singlet = DensityMatrix4::from_pure({0.0, r, -r, 0.0});
  DensityMatrix4 werner;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      werner(i, j) = 0.5 * singlet(i, j) + (i == j ? 0.125 : 0.0);
  f.close("Werner p=0.5 concurrence", "p=0.5", 0.25, concurrence(werner), 0.0, t.measure);

  f.close("entanglement entropy max", "eta=0.5", 1.0, entanglement_entropy({0.0, std::sqrt(0.5), std::sqrt(0.5), 0.0}),
          0.0, 1e-12);
  f.close("binary entropy max", "eta=0.5", 1.0, binary_entropy(0.5), 0.0, 1e-12);
  f.close("Bell mutual information", "(|EE> + |GG>)/sqrt2", 2.0,
          mutual_information(DensityMatrix4::from_pure({r, 0.0, 0.0, r})), 0.0, 1e-12);

  for (int k = 0; k < 200; ++k) {
    // random full-rank state A A^+ / Tr
    Matrix4 a{};
    for (auto& row : a)
      for (auto& v : row)
        v = random_normal(rng);
    DensityMatrix4 rho;
    double tr = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        cplx acc = 0.0;
        for (int m = 0; m < 4; ++m)
          acc += a[i][m] * std::conj(a[j][m]);
        rho(i, j) = acc;
      }
    for (int i = 0; i < 4; ++i)
      tr += rho(i, i).real();
    for (auto& row : rho.m)
      for (auto& v : row)
        v /= tr;
    // mix in a little of a Bell state so some samples are entangled
    const auto bell = DensityMatrix4::from_pure({r, 0.0, 0.0, r});
    const double w = (k % 4) / 4.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        rho(i, j) = (1.0 - w) * rho(i, j) + w * bell(i, j);
    const double c0 = concurrence(rho);
    const double c1 = concurrence(conjugate_by(local_unitary(rng), rho));
    f.close("concurrence under U_A x U_B", "mixed state #" + std::to_string(k), c0, c1, 0.0, 1e-9);
  }
  return f.finish();
}

FamilyReport check_determinism(const Tolerances&, const ClosedForms& cf) {
  Family f("determinism");
  for (const auto& p : validation_grid()) {
    try {
      const auto b1 = cf.amp_b(p), b2 = cf.amp_b(p);
      const auto l1 = cf.mode_sum_l(p), l2 = cf.mode_sum_l(p);
      const auto vu1 = cf.cross_vu(p), vu2 = cf.cross_vu(p);
      const auto c1 = cf.cross_vv_uu(p), c2 = cf.cross_vv_uu(p);
      f.close("b repeated", at(p), b1, b2, 0.0);
      f.close("l repeated", at(p), l1, l2, 0.0);
      f.close("vu repeated", at(p), vu1, vu2, 0.0);
      f.close("vv repeated", at(p), c1.first, c2.first, 0.0);
      f.close("uu repeated", at(p), c1.second, c2.second, 0.0);
    } catch (const std::exception& e) {
      f.error("repeat evaluation", at(p), e);
    }
  }
  SweepSpec one = preset("fig1");
  one.threads = 1;
  SweepSpec many = preset("fig1");
  many.threads = 8;
  std::ostringstream a, b, c;
  write_csv(run_sweep(one), a);
  write_csv(run_sweep(many), b);
  write_csv(run_sweep(many), c);
  f.at_most("fig1 sweep CSV mismatches between runs and thread counts", "preset fig1",
            static_cast<double>((a.str() != b.str()) + (b.str() != c.str())), 0.0);
  return f.finish();
}

} // namespace

std::optional<ToleranceProfile> parse_profile(const std::string& name) {
  if (name == "default")
    return ToleranceProfile::standard;
  if (name == "strict")
    return ToleranceProfile::strict;
  return std::nullopt;
}

Tolerances Tolerances::for_profile(ToleranceProfile p) {
  Tolerances t;
  if (p == ToleranceProfile::strict) {
    t.specfun_points = 3000;
    t.ei_pairs = 60;
    t.ei_identity = 1e-7;
    t.quad_M = 1e-9;
    t.quad_uv2 = 1e-9;
    t.source_I = 1e-10;
    t.fd_b_outside = 1e-7;
    t.fd_b_inside = 1e-6;
    t.fd_l = 1e-7;
    t.mode_grid.k_max = 8.0e4;
    t.mode_grid.tolerance = 2.5e-4;
    t.grid_kernel = 3e-4;
    t.grid_two_photon = 1e-3;
    t.pure_states = 10000;
  }
  return t;
}

bool ValidationReport::passed() const {
  return std::all_of(families.begin(), families.end(), [](const FamilyReport& f) { return f.passed(); });
}

const FamilyReport* ValidationReport::find(const std::string& name) const {
  for (const auto& f : families)
    if (f.name == name)
      return &f;
  return nullptr;
}

const std::vector<std::string>& validation_families() {
  static const std::vector<std::string> names{
      "specfun_reference",       "ei_identities",       "mode_integral_M",
      "emission_probabilities",  "dipole_source_I",     "amp_b_finite_difference",
      "mode_sum_l_finite_difference", "mode_grid_kernels", "mode_grid_two_photon",
      "g2_identity",             "positivity",          "state_invariants",
      "sector_concurrence",      "entanglement_measures", "determinism"};
  return names;
}

std::vector<PhysParams> validation_grid() {
  std::vector<PhysParams> out;
  for (double z : {5.0, 10.0, 15.0})
    for (double x : {0.3, 0.5, 0.8, 0.95, 1.05, 1.2, 2.0, 3.0})
      out.push_back(point(z, x));
  return out;
}

ValidationReport run_validation(const ValidationOptions& options) {
  const Tolerances t = Tolerances::for_profile(options.profile);
  const ClosedForms& cf = options.closed;
  for (const auto& name : options.only)
    if (std::find(validation_families().begin(), validation_families().end(), name) == validation_families().end())
      throw std::invalid_argument("unknown validation family '" + name + "'");
  auto wanted = [&](const std::string& name) {
    return options.only.empty() || std::find(options.only.begin(), options.only.end(), name) != options.only.end();
  };
  ValidationReport report;
  auto run = [&](const std::string& name, auto&& fn) {
    if (wanted(name))
      report.families.push_back(fn());
  };
  run("specfun_reference", [&] { return check_specfun(t); });
  run("ei_identities", [&] { return check_ei_identities(t); });
  run("mode_integral_M", [&] { return check_M(t, cf); });
  run("emission_probabilities", [&] { return check_uv2(t, cf); });
  run("dipole_source_I", [&] { return check_source_I(t, cf); });
  run("amp_b_finite_difference", [&] { return check_fd_b(t, cf); });
  run("mode_sum_l_finite_difference", [&] { return check_fd_l(t, cf); });
  run("mode_grid_kernels", [&] { return check_grid_kernels(t, cf); });
  run("mode_grid_two_photon", [&] { return check_grid_two_photon(t, cf); });
  run("g2_identity", [&] { return check_g2_identity(t, cf); });
  run("positivity", [&] { return check_positivity(t); });
  run("state_invariants", [&] { return check_state_invariants(t); });
  run("sector_concurrence", [&] { return check_sector_concurrence(t); });
  run("entanglement_measures", [&] { return check_measures(t); });
  run("determinism", [&] { return check_determinism(t, cf); });
  return report;
}

void print_report(const ValidationReport& report, std::ostream& os) {
  long checks = 0, failures = 0;
  for (const auto& f : report.families) {
    checks += f.checks;
    failures += static_cast<long>(f.failures.size());
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-30s %6ld checks %5zu failed %8.2f s\n", f.passed() ? "ok" : "FAIL",
                  f.name.c_str(), f.checks, f.failures.size(), f.seconds);
    os << line;
    for (const auto& n : f.notes)
      os << "       note: " << n << '\n';
    constexpr std::size_t kShown = 20;
    for (std::size_t i = 0; i < f.failures.size() && i < kShown; ++i) {
      const auto& e = f.failures[i];
      std::ostringstream d;
      d.precision(12);
      d << "       " << e.quantity << " at " << e.point << ": expected " << e.expected << ", got " << e.got
        << ", tolerance " << e.tolerance << '\n';
      os << d.str();
    }
    if (f.failures.size() > kShown)
      os << "       ... " << f.failures.size() - kShown << " more\n";
  }
  os << report.families.size() << " families, " << checks << " checks, " << failures << " failures\n";
}

} // namespace fermi
