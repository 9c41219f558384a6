#include "fermi/errors.hpp"
#include "fermi/sweep.hpp"
#include "fermi/validation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct PhysFlags {
  double dtilde = 5e-3;
  double cutoff_ratio = 366.0;

  void add(CLI::App* app) {
    app->add_option("--dtilde", dtilde, "dipole size Omega|d|/(e c)")->capture_default_str();
    app->add_option("--cutoff-ratio", cutoff_ratio, "z_max / z in the logarithm of a")->capture_default_str();
  }
  void apply(fermi::PhysParams& p) const {
    p.dtilde = dtilde;
    p.cutoff_ratio = cutoff_ratio;
  }
};

int run_sweep_command(const fermi::SweepSpec& spec) {
  spec.validate();
  const auto result = fermi::run_sweep(spec);
  for (const auto& s : result.skipped)
    std::cerr << "skipped z=" << s.z << " x=" << s.x << " [" << fermi::to_string(s.kind) << "]: " << s.reason << '\n';
  fermi::write_sweep(spec, result, std::cout);
  std::cerr << result.records.size() << " rows, " << result.skipped.size() << " skipped\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-atom entanglement through the vacuum: sweeps, single points, validation"};
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "evaluate a (z, x) grid and write CSV or JSON");
  std::string preset_name, format = "csv", output;
  std::vector<double> zs;
  double x_min = 0.0, x_max = 0.0, guard = 0.0;
  int x_steps = 0;
  PhysFlags sweep_phys;
  sweep->add_option("--preset", preset_name, "figure preset")->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  sweep->add_option("--z", zs, "comma-separated z = Omega L / c values")->delimiter(',');
  sweep->add_option("--x-min", x_min, "smallest x = L/(c t)");
  sweep->add_option("--x-max", x_max, "largest x");
  sweep->add_option("--x-steps", x_steps, "grid points in x (>= 2)");
  sweep->add_option("--guard", guard, "half-width of the excluded window around x = 1");
  sweep->add_option("--output", output, "output file (default: stdout)");
  sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sweep->add_option("--threads", "worker threads (0: all cores)");
  sweep_phys.add(sweep);

  // point
  auto* pt = app.add_subcommand("point", "dump every amplitude and measure at one (z, x) as JSON");
  double pz = 10.0, px = 2.0, pguard = 1e-3;
  std::string pout;
  PhysFlags point_phys;
  pt->add_option("--z", pz, "z = Omega L / c")->capture_default_str();
  pt->add_option("--x", px, "x = L/(c t)")->capture_default_str();
  pt->add_option("--guard", pguard, "half-width of the excluded window around x = 1")->capture_default_str();
  pt->add_option("--output", pout, "output file (default: stdout)");
  point_phys.add(pt);

  // validate
  auto* val = app.add_subcommand("validate", "compare every closed form with its oracle");
  std::string profile = "default";
  std::vector<std::string> families;
  val->add_option("--tolerance-profile", profile, "default or strict")
      ->check(CLI::IsMember({"default", "strict"}))
      ->capture_default_str();
  val->add_option("--family", families, "run only these check families (repeatable)")
      ->check(CLI::IsMember(fermi::validation_families()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sweep) {
      fermi::SweepSpec spec = preset_name.empty() ? fermi::SweepSpec{} : fermi::preset(preset_name);
      if (sweep->count("--z"))
        spec.z_values = zs;
      if (sweep->count("--x-min"))
        spec.x_min = x_min;
      if (sweep->count("--x-max"))
        spec.x_max = x_max;
      if (sweep->count("--x-steps"))
        spec.x_steps = x_steps;
      if (sweep->count("--guard"))
        spec.guard_half_width = guard;
      if (sweep->count("--threads"))
        spec.threads = sweep->get_option("--threads")->as<unsigned>();
      spec.output_path = output;
      spec.format = format == "json" ? fermi::OutputFormat::json : fermi::OutputFormat::csv;
      sweep_phys.apply(spec.params);
      return run_sweep_command(spec);
    }
    if (*pt) {
      fermi::PhysParams p;
      p.z = pz;
      p.x = px;
      point_phys.apply(p);
      const std::string doc = fermi::emit_point(p, pguard);
      if (pout.empty()) {
        std::cout << doc << '\n';
      } else {
        std::ofstream f(pout, std::ios::binary | std::ios::trunc);
        if (!(f << doc << '\n'))
          throw std::runtime_error("cannot write '" + pout + "'");
      }
      return 0;
    }
    if (*val) {
      fermi::ValidationOptions opts;
      opts.profile = *fermi::parse_profile(profile);
      opts.only = families;
      const auto report = fermi::run_validation(opts);
      fermi::print_report(report, std::cout);
      return report.exit_code();
    }
  } catch (const fermi::SingularPointError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::logic_error& e) {
    // invalid spec or parameters
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
