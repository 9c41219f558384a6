// Acceptance report: one PASS/FAIL line per criterion, tolerances as pinned by the requirements.

#include "fermi/amplitudes.hpp"
#include "fermi/errors.hpp"
#include "fermi/quantum.hpp"
#include "fermi/sweep.hpp"
#include "fermi/validation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace fermi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

PhysParams at(double z, double x) {
  PhysParams p;
  p.z = z;
  p.x = x;
  return p;
}

std::string csv(const SweepResult& r) {
  std::ostringstream os;
  write_csv(r, os);
  return os.str();
}

// smallest eigenvalue of [[p, c], [c*, q]] / (p + q)
double block_min_eigenvalue(double p, double q, cplx c) {
  const double n = p + q;
  const double mean = 0.5 * (p + q), half = std::hypot(0.5 * (p - q), std::abs(c));
  return (mean - half) / n;
}

void fig1(Outcome& o) {
  const auto t0 = Clock::now();
  for (double z : {5.0, 10.0, 15.0}) {
    SweepSpec s = preset("fig1");
    s.z_values = {z};
    s.x_min = 0.9;
    s.x_max = 1.1;
    s.x_steps = 2000;
    const SweepResult r = run_sweep(s);
    double best = 0.0, at_x = 0.0;
    for (const auto& rec : r.records)
      if (rec.conc0 > best) {
        best = rec.conc0;
        at_x = rec.x;
      }
    o.detail << "z=" << z << ": max conc0 " << best << " at x=" << at_x << " (" << r.records.size() << " rows, "
             << r.skipped.size() << " skipped); ";
    o.pass &= best >= 0.999;

    // the same window without dropping rows whose photon sectors are not positive
    double direct = 0.0;
    for (double x : x_grid(s))
      if (!guard_violation(at(z, x), s.guard_half_width)) {
        const cplx a = amp_a(at(z, x)), b = amp_b(at(z, x));
        direct = std::max(direct, report(AmplitudeSet{a, b}).conc_n0);
      }
    o.detail << "all guarded-grid points: " << direct << "; ";

    // where |b| = |1+a| actually sits (informational)
    auto excess = [&](double x) { return std::abs(amp_b(at(z, x))) - std::abs(1.0 + amp_a(at(z, x))); };
    double lo = 1.0 + 1e-12, hi = 1.01;
    if (excess(lo) > 0.0 && excess(hi) < 0.0) {
      for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? lo : hi) = mid;
      }
      o.detail << "peak at x-1=" << 0.5 * (lo + hi) - 1.0 << "; ";
    }
  }
  const double c = report(amplitude_set(at(10, 2))).conc_n0;
  o.detail << "conc0(10,2)=" << c << " (band [1e-9, 1e-4]); ";
  o.pass &= c >= 1e-9 && c <= 1e-4;
  const double secs = seconds_since(t0);
  o.detail << "runtime " << secs << " s";
  o.pass &= secs < 60.0;
}

void short_time(Outcome& o) {
  const double z = 10.0;
  const int n = 21;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double tau = std::pow(10.0, -3.0 + static_cast<double>(i) / (n - 1));
    const double lx = std::log(tau), ly = std::log(std::abs(amp_b(at(z, z / tau))));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  o.detail << "log-log slope of |b| vs tau on [1e-3, 1e-2] at z=10: " << slope << " (target 4 +- 0.5)";
  o.pass = std::abs(slope - 4.0) <= 0.5;
}

void fig2(Outcome& o) {
  SweepSpec s = preset("fig2");
  s.z_values = {10.0};
  const SweepResult r = run_sweep(s);
  double peak = 0.0, first = -1.0;
  for (const auto& rec : r.records) {
    peak = std::max(peak, rec.conc1);
    if (rec.x == s.x_min)
      first = rec.conc1;
  }
  const double c15 = report(amplitude_set(at(10, 1.5))).conc_n1;
  o.detail << "conc1(10, 0.05)=" << first << ", max " << peak << ", conc1(10, 1.5)=" << c15 << " ("
           << r.skipped.size() << " skipped)";
  o.pass = first >= 0.0 && first < 0.1 * peak && c15 > 0.0;
}

void fig3(Outcome& o) {
  const SweepSpec s = preset("fig3");
  const SweepResult r = run_sweep(s);
  double worst_large = 0.0, min_mi = INFINITY;
  for (const auto& rec : r.records) {
    if (rec.x >= 0.5)
      worst_large = std::max(worst_large, rec.conc_mix);
    min_mi = std::min(min_mi, rec.mutual_info);
  }
  int unusable = 0;
  std::ostringstream why;
  for (const auto& k : r.skipped)
    if (k.kind != SkipKind::guard && k.x >= 0.5) {
      // the row was dropped for a photon sector; the field-traced state may still be usable
      why << " [z=" << k.z << " x=" << k.x << ": ";
      try {
        const double c = concurrence(rho_mixed(amplitude_set(at(k.z, k.x))));
        worst_large = std::max(worst_large, c);
        why << "conc_mix " << c << "]";
      } catch (const std::exception& e) {
        ++unusable;
        why << e.what() << "]";
      }
    }

  SweepSpec inset = s;
  inset.z_values = {5.0};
  inset.x_min = 0.01;
  inset.x_max = 0.3;
  const SweepResult ri = run_sweep(inset);
  double best_small = 0.0;
  for (const auto& rec : ri.records) {
    best_small = std::max(best_small, rec.conc_mix);
    min_mi = std::min(min_mi, rec.mutual_info);
  }
  o.detail << "max conc_mix for x>=0.5: " << worst_large << " (<= 1e-12); " << unusable
           << " points with no valid mixed state in that range; max conc_mix at z=5, x in [0.01, 0.3]: " << best_small
           << "; min mutual_info " << min_mi;
  if (unusable)
    o.detail << "; skipped:" << why.str();
  o.pass = worst_large <= 1e-12 && unusable == 0 && best_small > 0.0 && min_mi >= 0.0;
}

void identity(Outcome& o) {
  std::vector<PhysParams> pts = validation_grid();
  const SweepSpec s = preset("fig1");
  for (double z : s.z_values)
    for (double x : x_grid(s))
      if (!guard_violation(at(z, x), s.guard_half_width))
        pts.push_back(at(z, x));
  double worst = 0.0;
  for (const auto& p : pts) {
    const double u2 = prob_u2(p), v2 = prob_v2(p);
    const cplx l = mode_sum_l(p);
    const double g2 = two_photon(p).g2, id = u2 * v2 + std::norm(l);
    worst = std::max(worst, std::abs(g2 - id) / id);
  }
  o.detail << pts.size() << " points, worst relative |g|^2 - (|u|^2|v|^2 + |l|^2): " << worst << " (<= 1e-12)";
  o.pass = worst <= 1e-12;
}

void oracle_equivalence(Outcome& o) {
  const auto t0 = Clock::now();
  const ValidationReport r = run_validation();
  const double secs = seconds_since(t0);
  for (const char* name :
       {"mode_integral_M", "emission_probabilities", "amp_b_finite_difference", "mode_grid_two_photon"}) {
    const FamilyReport* f = r.find(name);
    const bool ok = f && f->passed();
    o.detail << name << (ok ? " ok" : " FAILED") << " (" << (f ? f->checks : 0) << " checks); ";
    o.pass &= ok;
  }
  o.detail << "full validation " << secs << " s (< 600 s)";
  o.pass &= secs < 600.0;
}

void measures(Outcome& o) {
  ValidationOptions opt;
  opt.only = {"entanglement_measures"};
  const ValidationReport r = run_validation(opt);
  const FamilyReport* f = r.find("entanglement_measures");
  o.pass = f && f->passed();
  o.detail << (f ? f->checks : 0) << " checks: pure-state Wootters 1e-10 over 1000 states, Werner 0.25, entropy max, "
           << "Bell mutual information 2, local-unitary invariance 1e-9";
  if (f)
    for (const auto& e : f->failures)
      o.detail << "; " << e.quantity << " at " << e.point << " got " << e.got << " expected " << e.expected;
}

void state_invariants(Outcome& o) {
  const SweepSpec s = preset("fig1");
  long matrices = 0, bad = 0;
  double worst_eig = 0.0, worst_trace = 0.0, worst_herm = 0.0;
  std::string first_bad;
  for (double z : s.z_values)
    for (double x : x_grid(s)) {
      const PhysParams p = at(z, x);
      if (guard_violation(p, s.guard_half_width))
        continue;
      const AmplitudeSet a = amplitude_set(p);
      const double mins[] = {block_min_eigenvalue(std::norm(1.0 + a.a), std::norm(a.b), (1.0 + a.a) * std::conj(a.b)),
                             block_min_eigenvalue(a.v2, a.u2, a.l), block_min_eigenvalue(a.f2, a.g2, a.fg)};
      const DensityMatrix4 mixed = rho_mixed(a);
      const double tr = std::abs(mixed.trace() - 1.0), herm = mixed.hermiticity_defect();
      const double me = std::min({mins[0], mins[1], mins[2], mixed.eigenvalues()[0]});
      matrices += 4;
      worst_trace = std::max(worst_trace, tr);
      worst_herm = std::max(worst_herm, herm);
      worst_eig = std::min(worst_eig, me);
      if (me < -1e-8 || tr > 1e-12 || herm > 1e-12) {
        ++bad;
        if (first_bad.empty()) {
          std::ostringstream os;
          os << "z=" << z << " x=" << x << " min eigenvalue " << me;
          first_bad = os.str();
        }
      }
    }
  o.detail << matrices << " matrices; worst |Tr-1| " << worst_trace << ", hermiticity " << worst_herm
           << ", min eigenvalue " << worst_eig << " (>= -1e-8); " << bad << " points violate";
  if (!first_bad.empty())
    o.detail << ", first: " << first_bad;
  o.pass = bad == 0;
}

void determinism(Outcome& o) {
  SweepSpec s = preset("fig1");
  const std::string a = csv(run_sweep(s));
  const std::string b = csv(run_sweep(s));
  s.threads = 1;
  const std::string c = csv(run_sweep(s));
  o.detail << a.size() << " bytes; rerun " << (a == b ? "identical" : "differs") << ", single thread "
           << (a == c ? "identical" : "differs");
  o.pass = a == b && a == c;
}

} // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"fig1", fig1},         {"short_time", short_time}, {"fig2", fig2},
      {"fig3", fig3},         {"identity", identity},     {"oracle", oracle_equivalence},
      {"measures", measures}, {"state_invariants", state_invariants}, {"determinism", determinism}};
  std::vector<std::string> names;
  for (const auto& c : criteria)
    names.push_back(c.first);

  CLI::App app{"acceptance report"};
  std::vector<std::string> only;
  app.add_option("--only", only, "run only these criteria")->check(CLI::IsMember(names));
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end())
      continue;
    Outcome o;
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " error: " << e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail.str() << std::endl;
  }
  return failed ? 1 : 0;
}
