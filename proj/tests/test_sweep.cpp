#include "fermi/errors.hpp"
#include "fermi/sweep.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace fermi;

namespace {

std::string csv_of(const SweepSpec& spec) {
  std::ostringstream os;
  write_csv(run_sweep(spec), os);
  return os.str();
}

SweepSpec small_spec() {
  SweepSpec s;
  s.z_values = {15.0, 5.0};
  s.x_min = 0.1;
  s.x_max = 2.9;
  s.x_steps = 40;
  return s;
}

} // namespace

TEST_SUITE("sweep") {
  TEST_CASE("grid arithmetic: 3 z values, 500 steps, 2 guarded points per z") {
    SweepSpec s;
    s.z_values = {10.0, 15.0, 20.0};
    s.guard_half_width = 0.0075;
    const SweepResult r = run_sweep(s);
    for (const auto& k : r.skipped)
      MESSAGE("skipped z=" << k.z << " x=" << k.x << " " << std::string(to_string(k.kind)) << ": " << k.reason);
    CHECK(r.records.size() == 1494);
    CHECK(r.skipped.size() == 6);
    for (const auto& k : r.skipped) {
      CHECK(k.kind == SkipKind::guard);
      CHECK(std::abs(k.x - 1.0) < 0.0075);
      CHECK_FALSE(k.reason.empty());
    }
  }

  TEST_CASE("x grid") {
    SweepSpec s;
    const auto xs = x_grid(s);
    REQUIRE(xs.size() == 500);
    CHECK(xs.front() == 0.05);
    CHECK(xs.back() == 3.0);
    CHECK(xs[1] - xs[0] == doctest::Approx(2.95 / 499));
  }

  TEST_CASE("row order and thread independence") {
    SweepSpec s = small_spec();
    s.threads = 1;
    const SweepResult one = run_sweep(s);
    s.threads = 7;
    const SweepResult many = run_sweep(s);
    REQUIRE(one.records.size() == many.records.size());
    for (std::size_t i = 1; i < one.records.size(); ++i) {
      const auto& a = one.records[i - 1];
      const auto& b = one.records[i];
      CHECK((a.z < b.z || (a.z == b.z && a.x < b.x)));
    }
    CHECK(one.records.front().z == 5.0);
    std::ostringstream a, b;
    write_csv(one, a);
    write_csv(many, b);
    CHECK(a.str() == b.str());
    CHECK(csv_of(s) == a.str());
  }

  TEST_CASE("csv format") {
    const std::string csv = csv_of(small_spec());
    CHECK(csv.find('\r') == std::string::npos);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "z,x,re_a,im_a,re_b,im_b,u2,v2,re_l,im_l,f2,g2,re_fg,im_fg,conc0,ent0,conc1,ent1,conc2,ent2,"
                    "conc_mix,mutual_info,norm_N");
    std::string row;
    std::getline(in, row);
    std::istringstream cells(row);
    std::string cell;
    int n = 0;
    while (std::getline(cells, cell, ',')) {
      ++n;
      // d.ddddddddddde[+-]XX: 12 significant digits in scientific notation
      const auto e = cell.find('e');
      REQUIRE(e != std::string::npos);
      const std::string mant = cell.substr(cell[0] == '-' ? 1 : 0, e - (cell[0] == '-' ? 1 : 0));
      CHECK(mant.size() == 13);
      CHECK(mant[1] == '.');
    }
    CHECK(n == 23);
    CHECK(csv.back() == '\n');
  }

  TEST_CASE("format12") {
    CHECK(format12(1.0) == "1.00000000000e+00");
    CHECK(format12(-0.0) == "0.00000000000e+00");
    CHECK(format12(1.0 / 3.0) == "3.33333333333e-01");
    CHECK(round12(1.0 / 3.0) == 0.333333333333);
  }

  TEST_CASE("records are finite and measures in range") {
    const SweepResult r = run_sweep(small_spec());
    for (const auto& rec : r.records) {
      for (double v : rec.values())
        CHECK(std::isfinite(v));
      for (double v : {rec.conc0, rec.conc1, rec.conc2, rec.conc_mix, rec.ent0, rec.ent1, rec.ent2}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
      CHECK(rec.mutual_info >= 0.0);
      CHECK(rec.mutual_info <= 2.0);
      CHECK(rec.norm_N > 0.0);
    }
  }

  TEST_CASE("json output parses") {
    const SweepResult r = run_sweep(small_spec());
    std::ostringstream os;
    write_json(r, os);
    const auto doc = nlohmann::json::parse(os.str());
    CHECK(doc["records"].size() == r.records.size());
    CHECK(doc["columns"].size() == 23);
    CHECK(doc["records"][0]["conc0"].get<double>() == round12(r.records[0].conc0));
    CHECK(doc["skipped"].size() == r.skipped.size());
  }

  TEST_CASE("writes to a file and reports unwritable paths") {
    SweepSpec s = small_spec();
    const auto path = std::filesystem::temp_directory_path() / "fermi_sweep_test.csv";
    s.output_path = path.string();
    const SweepResult r = run_sweep(s);
    std::ostringstream unused;
    write_sweep(s, r, unused);
    CHECK(unused.str().empty());
    std::ifstream f(path, std::ios::binary);
    std::stringstream content;
    content << f.rdbuf();
    CHECK(content.str() == csv_of(small_spec()));
    std::filesystem::remove(path);
    s.output_path = "/nonexistent-dir/x.csv";
    CHECK_THROWS_AS(write_sweep(s, r, unused), std::runtime_error);
  }

  TEST_CASE("invalid specs") {
    SweepSpec s;
    s.x_min = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = SweepSpec{};
    s.x_steps = 1;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = SweepSpec{};
    s.guard_half_width = -1;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = SweepSpec{};
    s.z_values.clear();
    CHECK_THROWS_AS(run_sweep(s), std::invalid_argument);
    s = SweepSpec{};
    s.x_max = 0.01;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  }

  TEST_CASE("presets") {
    for (const char* name : {"fig1", "fig2", "fig3"}) {
      const SweepSpec s = preset(name);
      CHECK(s.z_values == std::vector<double>{5.0, 10.0, 15.0});
      CHECK(s.x_min == 0.05);
      CHECK(s.x_max == 3.0);
      CHECK(s.x_steps == 500);
      CHECK(s.guard_half_width == 1e-3);
    }
    CHECK_THROWS_AS(preset("fig4"), std::invalid_argument);
  }

  TEST_CASE("skipped points carry a reason") {
    SweepSpec s;
    s.z_values = {10.0};
    s.x_min = 0.9995;
    s.x_max = 1.0005;
    s.x_steps = 3;
    const SweepResult r = run_sweep(s);
    REQUIRE(r.skipped.size() == 3);
    CHECK(r.records.empty());
    for (const auto& k : r.skipped) {
      CHECK(k.kind == SkipKind::guard);
      CHECK(k.reason.find("guard window") != std::string::npos);
    }
    CHECK(std::string(to_string(SkipKind::invalid_state)) != to_string(SkipKind::guard));
  }

  TEST_CASE("emit_point") {
    PhysParams p;
    p.z = 10;
    p.x = 2;
    const auto doc = nlohmann::json::parse(emit_point(p));
    CHECK(doc.contains("params"));
    CHECK(doc.contains("amplitudes"));
    CHECK(doc.contains("measures"));
    CHECK(doc["measures"]["conc_mix"].get<double>() == 0.0);
    CHECK(doc["params"]["z"].get<double>() == 10.0);
    for (const char* k : {"a", "b", "u2", "v2", "l", "vu", "vv", "uu", "f2", "g2", "fg"}) {
      CHECK(doc["amplitudes"].contains(k));
      CHECK(doc["amplitudes"][k].contains("re"));
      CHECK(doc["amplitudes"][k].contains("im"));
    }
    const AmplitudeSet s = amplitude_set(p);
    CHECK(doc["amplitudes"]["b"]["re"].get<double>() == round12(s.b.real()));
    CHECK(doc["amplitudes"]["l"]["im"].get<double>() == round12(s.l.imag()));
    // round trip: re-serialising the parsed document gives the same text
    CHECK(nlohmann::ordered_json::parse(emit_point(p)).dump() ==
          nlohmann::ordered_json::parse(nlohmann::ordered_json::parse(emit_point(p)).dump()).dump());

    p.x = 1e9;
    const auto early = nlohmann::json::parse(emit_point(p))["measures"];
    for (const char* k : {"conc_n0", "ent_n0", "conc_mixed", "conc_mix", "mutual_info"})
      CHECK(std::abs(early[k].get<double>()) <= 1e-12);
    CHECK(std::abs(early["norm_N"].get<double>() - 1.0) <= 1e-12);

    p.x = 1.0002;
    try {
      emit_point(p);
      FAIL("expected an error");
    } catch (const SingularPointError& e) {
      CHECK(std::string(e.what()).find("x") != std::string::npos);
    }
  }
}
