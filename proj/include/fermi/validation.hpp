#pragma once

// Oracle-vs-closed-form checks and state-invariant sweeps behind `fermi validate`.

#include "fermi/amplitudes.hpp"
#include "fermi/oracle/two_photon.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fermi {

enum class ToleranceProfile { standard, strict };

// "default" or "strict"; anything else -> std::nullopt
std::optional<ToleranceProfile> parse_profile(const std::string& name);

struct Tolerances {
  int specfun_points = 1000;
  double specfun_rel = 1e-10;
  double specfun_abs = 1e-12;
  int ei_pairs = 20;
  double ei_identity = 1e-6;
  double quad_M = 1e-6;
  double quad_uv2 = 1e-6;
  double source_I = 1e-8;
  double fd_b_outside = 1e-5; // x > 1
  double fd_b_inside = 1e-4;  // x < 1
  double fd_l = 1e-6;
  double grid_kernel = 1e-3;
  double grid_two_photon = 3e-3;
  oracle::ModeGrid mode_grid;
  double g2_identity = 1e-12;
  double trace = 1e-12;
  double hermiticity = 1e-12;
  double min_eigenvalue = -1e-8;
  double measure = 1e-10;
  int pure_states = 1000;

  static Tolerances for_profile(ToleranceProfile p);
};

// The closed forms under test. Defaults are the library functions; tests swap
// one entry for a perturbed copy to check that the harness notices.
struct ClosedForms {
  std::function<cplx(const PhysParams&)> amp_b = fermi::amp_b;
  std::function<double(const PhysParams&)> prob_u2 = fermi::prob_u2;
  std::function<double(const PhysParams&)> prob_v2 = fermi::prob_v2;
  std::function<double(const PhysParams&)> mode_integral_M = fermi::mode_integral_M;
  std::function<cplx(const PhysParams&)> mode_sum_l = fermi::mode_sum_l;
  std::function<cplx(const PhysParams&)> cross_vu = fermi::cross_vu;
  std::function<std::pair<cplx, cplx>(const PhysParams&)> cross_vv_uu = fermi::cross_vv_uu;
  std::function<cplx(const PhysParams&)> dipole_source_I = fermi::detail::dipole_source_I;
  std::function<TwoPhoton(const PhysParams&)> two_photon = fermi::two_photon;
};

struct CheckFailure {
  std::string quantity;
  std::string point;
  double expected = 0.0;
  double got = 0.0;
  double tolerance = 0.0;
};

struct FamilyReport {
  std::string name;
  long checks = 0;
  std::vector<CheckFailure> failures;
  std::vector<std::string> notes; // informational lines (residuals that have no target)
  double seconds = 0.0;

  bool passed() const { return failures.empty(); }
};

struct ValidationReport {
  std::vector<FamilyReport> families;

  bool passed() const;
  int exit_code() const { return passed() ? 0 : 1; }
  const FamilyReport* find(const std::string& name) const;
};

struct ValidationOptions {
  ToleranceProfile profile = ToleranceProfile::standard;
  ClosedForms closed;
  std::vector<std::string> only; // empty: all families
};

// Names of every check family, in run order.
const std::vector<std::string>& validation_families();

// Standard validation grid: z in {5, 10, 15} times eight x values on both sides of x = 1.
std::vector<PhysParams> validation_grid();

ValidationReport run_validation(const ValidationOptions& options = {});

void print_report(const ValidationReport& report, std::ostream& os);

} // namespace fermi
