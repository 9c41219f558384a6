#pragma once

#include "fermi/amplitudes.hpp"
#include "fermi/quantum.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fermi {

enum class OutputFormat { csv, json };

struct SweepSpec {
  std::vector<double> z_values{5.0, 10.0, 15.0};
  double x_min = 0.05;
  double x_max = 3.0;
  int x_steps = 500;
  double guard_half_width = 1e-3;
  PhysParams params; // z and x are overwritten per grid point
  std::string output_path;
  OutputFormat format = OutputFormat::csv;
  unsigned threads = 0; // 0: hardware concurrency

  void validate() const;
};

// "fig1", "fig2" or "fig3"; all three share the grid, they differ in the column read by the plots.
SweepSpec preset(const std::string& name);

struct SweepRecord {
  double z, x;
  double re_a, im_a, re_b, im_b;
  double u2, v2, re_l, im_l, f2, g2, re_fg, im_fg;
  double conc0, ent0, conc1, ent1, conc2, ent2, conc_mix, mutual_info, norm_N;

  static const std::vector<std::string>& column_names();
  std::vector<double> values() const;
};

enum class SkipKind {
  guard,        // inside the |x-1| window or below the argument floor
  singular,     // a closed form refused the point
  invalid_state // amplitudes do not form a positive state (|l|^2 > u2 v2 near the light cone)
};

struct SkippedPoint {
  double z, x;
  SkipKind kind;
  std::string reason;
};

const char* to_string(SkipKind k);

struct SweepResult {
  std::vector<SweepRecord> records;
  std::vector<SkippedPoint> skipped;
};

// x_min + (x_max - x_min) i / (steps - 1)
std::vector<double> x_grid(const SweepSpec& spec);

SweepRecord make_record(const PhysParams& p, const AmplitudeSet& s, const EntanglementReport& r);

// Evaluates every grid point; output order is z ascending then x ascending,
// whatever the thread schedule.
SweepResult run_sweep(const SweepSpec& spec);

void write_csv(const SweepResult& result, std::ostream& os);
void write_json(const SweepResult& result, std::ostream& os);

// Writes to spec.output_path (or os when the path is empty) in spec.format.
void write_sweep(const SweepSpec& spec, const SweepResult& result, std::ostream& os);

// JSON document with params / amplitudes / measures sections, 12 significant digits.
std::string emit_point(const PhysParams& p, double guard_half_width = 1e-3);

// Value rounded to 12 significant digits, as written to every output file.
double round12(double v);
std::string format12(double v);

} // namespace fermi
