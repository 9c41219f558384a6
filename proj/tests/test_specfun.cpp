#include "fermi/errors.hpp"
#include "fermi/oracle/ref_specfun.hpp"
#include "fermi/specfun.hpp"

#include <doctest.h>

#include <bit>
#include <cstdint>
#include <cmath>
#include <numbers>

using namespace fermi;

namespace {

constexpr double kPi = std::numbers::pi;

// y, si = Si - pi/2, ci (mpmath, 30 digits)
struct Gold {
  double y, si, ci;
};
constexpr Gold kGold[] = {
    {1e-5, -1.57078632679489671e+00, -1.09357098000936954e+01},
    {0.5, -1.07768890875182999e+00, -1.77784078806612900e-01},
    {2.0, 3.46166500077982262e-02, 4.22980828774864981e-01},
    {3.7, 2.37825354083557150e-01, -8.19010012842984469e-02},
    {10.0, 8.75512674239774247e-02, -4.54564330044553710e-02},
    {55.0, -7.21933967448419676e-05, -1.81726961218029275e-02},
    {123.4, 5.22631535786811062e-03, -6.19218088838853053e-03},
    {1000.0, -5.63204826125401035e-04, 8.26315511090682246e-04},
};

bool close(double got, double want, double rel, double abs = 0.0) {
  return std::abs(got - want) <= rel * std::abs(want) + abs;
}

} // namespace

TEST_SUITE("specfun") {
  TEST_CASE("si and ci match frozen high-precision values") {
    for (const auto& g : kGold) {
      CAPTURE(g.y);
      CHECK(close(sin_integral(g.y), g.si, 1e-12, 1e-15));
      CHECK(close(cos_integral(g.y), g.ci, 1e-12, 1e-15));
    }
  }

  TEST_CASE("ei_imag is ci + i sgn(y) si") {
    for (const auto& g : kGold) {
      CAPTURE(g.y);
      const cplx e = ei_imag(g.y);
      CHECK(close(e.real(), g.ci, 1e-12, 1e-15));
      CHECK(close(e.imag(), g.si, 1e-12, 1e-15));
      const cplx m = ei_imag(-g.y);
      CHECK(close(m.imag(), -g.si, 1e-12, 1e-15));
    }
  }

  TEST_CASE("limits") {
    CHECK(std::abs(sin_integral(1000.0)) < 2e-3);
    CHECK(std::abs(cos_integral(1000.0)) < 2e-3);
    CHECK(cos_integral(1e-12) < -20.0);
    CHECK(sin_integral(0.0) == doctest::Approx(-kPi / 2).epsilon(1e-15));
  }

  TEST_CASE("conjugate symmetry of ei_imag") {
    const cplx p = ei_imag(3.7), m = ei_imag(-3.7);
    CHECK(std::abs(m - std::conj(p)) <= 1e-14);
  }

  TEST_CASE("values at 1 agree with the reference series") {
    using oracle::RefFunction;
    CHECK(close(sin_integral(1.0), oracle::ref_specfun(RefFunction::si, 1.0).to_double().real(), 1e-12));
    CHECK(close(cos_integral(1.0), oracle::ref_specfun(RefFunction::ci, 1.0).to_double().real(), 1e-12));
    const cplx r = oracle::ref_specfun(RefFunction::ei_imag, 1.0).to_double();
    CHECK(std::abs(ei_imag(1.0) - r) <= 1e-12 * std::abs(r));
  }

  TEST_CASE("agreement with the reference on both sides of the series / continued-fraction switch") {
    using oracle::RefFunction;
    for (double y : {1.999999, 2.0, 2.000001, 1.5, 2.5, 5.0, 40.0, 54.9, 55.1}) {
      CAPTURE(y);
      const double s = oracle::ref_specfun(RefFunction::si, y).to_double().real();
      const double c = oracle::ref_specfun(RefFunction::ci, y).to_double().real();
      CHECK(close(sin_integral(y), s, 1e-10, 1e-12));
      CHECK(close(cos_integral(y), c, 1e-10, 1e-12));
    }
  }

  TEST_CASE("log-spaced agreement with the reference") {
    using oracle::RefFunction;
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
      const double y = std::pow(10.0, -6.0 + 9.0 * i / 199.0);
      const double s = oracle::ref_specfun(RefFunction::si, y).to_double().real();
      const double c = oracle::ref_specfun(RefFunction::ci, y).to_double().real();
      bad += !close(sin_integral(y), s, 1e-10, 1e-12);
      bad += !close(cos_integral(y), c, 1e-10, 1e-12);
    }
    CHECK(bad == 0);
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(sin_integral(-1.0), DomainError);
    CHECK_THROWS_AS(cos_integral(0.0), DomainError);
    CHECK_THROWS_AS(cos_integral(-2.0), DomainError);
    CHECK_THROWS_AS(ei_imag(0.0), DomainError);
    CHECK_THROWS_AS(sin_integral(std::nan("")), DomainError);
  }

  TEST_CASE("odd sine integral") {
    CHECK(sine_integral_odd(0.0) == 0.0);
    CHECK(sine_integral_odd(-3.0) == -sine_integral_odd(3.0));
    CHECK(sine_integral_odd(2.0) == doctest::Approx(sin_integral(2.0) + kPi / 2).epsilon(1e-14));
  }

  TEST_CASE("delta_t kernel") {
    CHECK(delta_t_kernel(0.0) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-15));
    CHECK(delta_t_kernel(1e-6) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-12));
    for (int n = 1; n <= 5; ++n)
      CHECK(std::abs(delta_t_kernel(2.0 * kPi * n)) < 1e-16);
    CHECK(delta_t_kernel(-1.3) == delta_t_kernel(1.3));

    // Dirichlet integral over |u| <= 1e6 by composite Simpson, period 4 pi resolved with 40 points
    const double U = 1e6;
    const long n = 2 * static_cast<long>(U / (4.0 * kPi) * 40.0);
    const double h = U / n;
    double acc = delta_t_kernel(0.0) + delta_t_kernel(U);
    for (long i = 1; i < n; ++i)
      acc += (i % 2 ? 4.0 : 2.0) * delta_t_kernel(i * h);
    const double integral = 2.0 * acc * h / 3.0;
    CHECK(std::abs(integral - 1.0) < 1e-3);
  }

  TEST_CASE("bitwise determinism") {
    for (double y : {0.3, 2.0, 7.5, 300.0}) {
      CHECK(std::bit_cast<std::uint64_t>(sin_integral(y)) == std::bit_cast<std::uint64_t>(sin_integral(y)));
      const cplx a = ei_imag(y), b = ei_imag(y);
      CHECK(std::bit_cast<std::uint64_t>(a.imag()) == std::bit_cast<std::uint64_t>(b.imag()));
    }
  }
}
