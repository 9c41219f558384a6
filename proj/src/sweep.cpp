#include "fermi/sweep.hpp"

#include "fermi/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace fermi {

void SweepSpec::validate() const {
  if (z_values.empty())
    throw std::invalid_argument("sweep: at least one z value is required");
  for (double z : z_values)
    if (!(z > 0.0) || !std::isfinite(z))
      throw std::invalid_argument("sweep: z values must be finite and > 0");
  if (!(x_min > 0.0) || !std::isfinite(x_min))
    throw std::invalid_argument("sweep: x_min must be > 0");
  if (!(x_max > x_min) || !std::isfinite(x_max))
    throw std::invalid_argument("sweep: x_max must exceed x_min");
  if (x_steps < 2)
    throw std::invalid_argument("sweep: x_steps must be >= 2");
  if (!(guard_half_width >= 0.0))
    throw std::invalid_argument("sweep: guard half-width must be >= 0");
  PhysParams p = params;
  p.z = z_values.front();
  p.x = x_min;
  p.validate();
}

SweepSpec preset(const std::string& name) {
  if (name != "fig1" && name != "fig2" && name != "fig3")
    throw std::invalid_argument("unknown preset '" + name + "' (expected fig1, fig2 or fig3)");
  return SweepSpec{};
}

const std::vector<std::string>& SweepRecord::column_names() {
  static const std::vector<std::string> names{
      "z",  "x",  "re_a", "im_a",  "re_b",  "im_b",  "u2",    "v2",    "re_l",     "im_l",        "f2",    "g2",
      "re_fg", "im_fg", "conc0", "ent0", "conc1", "ent1", "conc2", "ent2", "conc_mix", "mutual_info", "norm_N"};
  return names;
}

std::vector<double> SweepRecord::values() const {
  return {z,  x,  re_a,  im_a,  re_b, im_b,  u2,   v2,    re_l,  im_l,     f2,          g2,
          re_fg, im_fg, conc0, ent0, conc1, ent1, conc2, ent2, conc_mix, mutual_info, norm_N};
}

const char* to_string(SkipKind k) {
  switch (k) {
  case SkipKind::guard:
    return "guard";
  case SkipKind::singular:
    return "singular";
  case SkipKind::invalid_state:
    return "invalid_state";
  }
  return "unknown";
}

std::vector<double> x_grid(const SweepSpec& spec) {
  std::vector<double> xs(spec.x_steps);
  const double span = spec.x_max - spec.x_min;
  for (int i = 0; i < spec.x_steps; ++i)
    xs[i] = spec.x_min + span * i / (spec.x_steps - 1);
  xs.back() = spec.x_max;
  return xs;
}

SweepRecord make_record(const PhysParams& p, const AmplitudeSet& s, const EntanglementReport& r) {
  return {p.z,       p.x,       s.a.real(),  s.a.imag(), s.b.real(),    s.b.imag(),  s.u2,
          s.v2,      s.l.real(), s.l.imag(), s.f2,       s.g2,          s.fg.real(), s.fg.imag(),
          r.conc_n0, r.ent_n0,  r.conc_n1,   r.ent_n1,   r.conc_n2,     r.ent_n2,    r.conc_mixed,
          r.mutual_info, r.norm_N};
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<double> zs = spec.z_values;
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
  const std::vector<double> xs = x_grid(spec);

  struct Slot {
    std::optional<SweepRecord> record;
    SkipKind kind = SkipKind::guard;
    std::string skip_reason;
    std::exception_ptr error;
  };
  const std::size_t n = zs.size() * xs.size();
  std::vector<Slot> slots(n);

  auto evaluate = [&](std::size_t k) {
    PhysParams p = spec.params;
    p.z = zs[k / xs.size()];
    p.x = xs[k % xs.size()];
    if (auto why = guard_violation(p, spec.guard_half_width)) {
      slots[k].skip_reason = *why;
      return;
    }
    try {
      const AmplitudeSet s = amplitude_set(p);
      slots[k].record = make_record(p, s, report(s));
    } catch (const SingularPointError& e) {
      slots[k].kind = SkipKind::singular;
      slots[k].skip_reason = e.what();
    } catch (const InconsistentAmplitudesError& e) {
      slots[k].kind = SkipKind::invalid_state;
      slots[k].skip_reason = e.what();
    } catch (const InvariantViolationError& e) {
      slots[k].kind = SkipKind::invalid_state;
      slots[k].skip_reason = e.what();
    } catch (...) {
      slots[k].error = std::current_exception();
    }
  };

  unsigned workers = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k)
      evaluate(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < n; k = next++)
          evaluate(k);
      });
    for (auto& t : pool)
      t.join();
  }

  SweepResult result;
  for (std::size_t k = 0; k < n; ++k) {
    if (slots[k].error)
      std::rethrow_exception(slots[k].error);
    if (slots[k].record)
      result.records.push_back(*slots[k].record);
    else
      result.skipped.push_back({zs[k / xs.size()], xs[k % xs.size()], slots[k].kind, slots[k].skip_reason});
  }
  return result;
}

std::string format12(double v) {
  if (v == 0.0)
    v = 0.0; // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

double round12(double v) { return std::stod(format12(v)); }

void write_csv(const SweepResult& result, std::ostream& os) {
  const auto& names = SweepRecord::column_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    os << (i ? "," : "") << names[i];
  os << '\n';
  for (const auto& r : result.records) {
    const auto v = r.values();
    for (std::size_t i = 0; i < v.size(); ++i)
      os << (i ? "," : "") << format12(v[i]);
    os << '\n';
  }
}

void write_json(const SweepResult& result, std::ostream& os) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["columns"] = SweepRecord::column_names();
  ordered_json rows = ordered_json::array();
  for (const auto& r : result.records) {
    ordered_json row = ordered_json::object();
    const auto v = r.values();
    for (std::size_t i = 0; i < v.size(); ++i)
      row[SweepRecord::column_names()[i]] = round12(v[i]);
    rows.push_back(std::move(row));
  }
  doc["records"] = std::move(rows);
  ordered_json skipped = ordered_json::array();
  for (const auto& s : result.skipped)
    skipped.push_back({{"z", round12(s.z)}, {"x", round12(s.x)}, {"kind", to_string(s.kind)}, {"reason", s.reason}});
  doc["skipped"] = std::move(skipped);
  os << doc.dump(1) << '\n';
}

void write_sweep(const SweepSpec& spec, const SweepResult& result, std::ostream& os) {
  auto emit = [&](std::ostream& out) {
    if (spec.format == OutputFormat::csv)
      write_csv(result, out);
    else
      write_json(result, out);
  };
  if (spec.output_path.empty()) {
    emit(os);
    return;
  }
  std::ofstream f(spec.output_path, std::ios::binary | std::ios::trunc);
  if (!f)
    throw std::runtime_error("cannot open output file '" + spec.output_path + "'");
  emit(f);
  f.flush();
  if (!f)
    throw std::runtime_error("failed writing output file '" + spec.output_path + "'");
}

std::string emit_point(const PhysParams& p, double guard_half_width) {
  p.validate();
  if (auto why = guard_violation(p, guard_half_width))
    throw SingularPointError("emit_point: " + *why);
  const AmplitudeSet s = amplitude_set(p);
  const EntanglementReport r = report(s);

  using nlohmann::ordered_json;
  auto c = [](cplx v) { return ordered_json{{"re", round12(v.real())}, {"im", round12(v.imag())}}; };
  auto re = [](double v) { return ordered_json{{"re", round12(v)}, {"im", 0.0}}; };
  ordered_json doc;
  doc["params"] = {{"z", round12(p.z)},           {"x", round12(p.x)},
                   {"tau", round12(p.tau())},     {"dtilde", round12(p.dtilde)},
                   {"alpha", round12(p.alpha)},   {"cutoff_ratio", round12(p.cutoff_ratio)}};
  doc["amplitudes"] = {{"a", c(s.a)},   {"b", c(s.b)},   {"u2", re(s.u2)}, {"v2", re(s.v2)},
                       {"l", c(s.l)},   {"vu", c(s.vu)}, {"vv", c(s.vv)},  {"uu", c(s.uu)},
                       {"f2", re(s.f2)}, {"g2", re(s.g2)}, {"fg", c(s.fg)}};
  doc["measures"] = {{"conc_n0", round12(r.conc_n0)},   {"conc_n1", round12(r.conc_n1)},
                     {"conc_n2", round12(r.conc_n2)},   {"conc_mixed", round12(r.conc_mixed)},
                     {"conc_mix", round12(r.conc_mixed)},
                     {"ent_n0", round12(r.ent_n0)},     {"ent_n1", round12(r.ent_n1)},
                     {"ent_n2", round12(r.ent_n2)},     {"mutual_info", round12(r.mutual_info)},
                     {"norm_N", round12(r.norm_N)}};
  return doc.dump(2) + "\n";
}

} // namespace fermi
