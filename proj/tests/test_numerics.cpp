#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "hecke/arith.hpp"
#include "hecke/numerics.hpp"
#include "oracles.hpp"

using namespace hecke;
using doctest::Approx;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("kahan summation survives 1e7 small increments") {
  KahanSum acc;
  for (int i = 0; i < 10000000; ++i) acc.add(0.1);
  CHECK(std::abs(acc.value() - 1e6) < 1e-6);
}

TEST_CASE("log_gamma matches lgamma on the positive real axis") {
  for (double x : {0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 41.5, 170.0}) {
    const cplx lg = log_gamma(cplx(x, 0.0));
    CHECK(std::abs(lg.imag()) < 1e-12);
    CHECK(lg.real() == Approx(std::lgamma(x)).epsilon(1e-12));
  }
}

TEST_CASE("log_gamma satisfies the recurrence and conjugate symmetry") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> re(-5.0, 5.0), im(0.1, 60.0);
  for (int i = 0; i < 200; ++i) {
    const cplx z(re(rng), im(rng));
    const cplx lhs = log_gamma(z + 1.0);
    const cplx rhs = log_gamma(z) + std::log(z);
    // exp() comparison sidesteps 2 pi i branch offsets in the logs
    CHECK(std::abs(std::exp(lhs - rhs) - 1.0) < 1e-11);
    const cplx conj_lg = log_gamma(std::conj(z));
    CHECK(std::abs(conj_lg - std::conj(log_gamma(z))) <
          1e-10 * (1.0 + std::abs(conj_lg)));
  }
}

TEST_CASE("log_gamma reflection: Gamma(z)Gamma(1-z) = pi/sin(pi z)") {
  for (const cplx z : {cplx(0.3, 2.0), cplx(-1.2, 0.7), cplx(0.5, 30.0)}) {
    const cplx prod = std::exp(log_gamma(z) + log_gamma(1.0 - z));
    const cplx expect = kPi / std::sin(kPi * z);
    CHECK(std::abs(prod - expect) < 1e-10 * std::abs(expect));
  }
}

TEST_CASE("log_gamma throws at the poles") {
  CHECK_THROWS_AS(log_gamma(cplx(0.0, 0.0)), std::domain_error);
  CHECK_THROWS_AS(log_gamma(cplx(-3.0, 0.0)), std::domain_error);
}

TEST_CASE("digamma agrees with the log_gamma difference quotient") {
  for (const cplx z : {cplx(1.0, 0.0), cplx(0.5, 14.0), cplx(3.2, -7.7),
                       cplx(-2.3, 1.1)}) {
    const double h = 1e-5;
    const cplx numeric =
        (log_gamma(z + h) - log_gamma(z - h)) / (2.0 * h);
    CHECK(std::abs(digamma(z) - numeric) < 1e-8 * (1.0 + std::abs(numeric)));
  }
  // psi(1) = -EulerGamma
  CHECK(digamma(cplx(1.0, 0.0)).real() ==
        Approx(-0.5772156649015329).epsilon(1e-12));
}

TEST_CASE("hurwitz_zeta special values and the shift ladder") {
  CHECK(hurwitz_zeta(cplx(2.0, 0.0), 1.0).real() ==
        Approx(kPi * kPi / 6.0).epsilon(1e-12));
  // zeta(s, 1/2) = (2^s - 1) zeta(s)
  const cplx s(1.7, 2.3);
  const cplx lhs = hurwitz_zeta(s, 0.5);
  const cplx rhs = (std::pow(cplx(2.0, 0.0), s) - 1.0) * riemann_zeta(s);
  CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(rhs)));
  // zeta(s, a) = zeta(s, a + 1) + a^{-s}
  for (double a : {0.3, 1.0, 2.5}) {
    const cplx l2 = hurwitz_zeta(s, a);
    const cplx r2 = hurwitz_zeta(s, a + 1.0) + std::pow(cplx(a, 0.0), -s);
    CHECK(std::abs(l2 - r2) < 1e-11 * (1.0 + std::abs(r2)));
  }
  CHECK_THROWS_AS(hurwitz_zeta(cplx(1.0, 0.0), 1.0), std::domain_error);
  CHECK_THROWS_AS(hurwitz_zeta(cplx(2.0, 0.0), -1.0), std::domain_error);
}

TEST_CASE("riemann_zeta classical values and functional equation") {
  CHECK(riemann_zeta(cplx(2.0, 0.0)).real() ==
        Approx(kPi * kPi / 6.0).epsilon(1e-13));
  CHECK(riemann_zeta(cplx(4.0, 0.0)).real() ==
        Approx(kPi * kPi * kPi * kPi / 90.0).epsilon(1e-13));
  CHECK(riemann_zeta(cplx(-1.0, 0.0)).real() ==
        Approx(-1.0 / 12.0).epsilon(1e-12));
  CHECK(riemann_zeta(cplx(0.0, 0.0)).real() == Approx(-0.5).epsilon(1e-12));
  // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
  for (const cplx s : {cplx(0.3, 5.0), cplx(0.5, 21.3), cplx(-0.7, 2.0)}) {
    const cplx rhs = std::pow(cplx(2.0, 0.0), s) *
                     std::pow(cplx(kPi, 0.0), s - 1.0) *
                     std::sin(kPi * s / 2.0) * std::exp(log_gamma(1.0 - s)) *
                     riemann_zeta(1.0 - s);
    CHECK(std::abs(riemann_zeta(s) - rhs) < 1e-9 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("dirichlet_l matches a direct partial sum with Abel tail bound") {
  // After partial summation the tail is below m * 3 / N^2 for m > 1; the
  // m = 1 (zeta) tail has no cancellation and is exactly ~1/N.
  for (int64_t m : {int64_t(1), int64_t(3), int64_t(23), int64_t(39)}) {
    KahanSum acc;
    for (int64_t n = 1; n <= 1000000; ++n)
      acc.add(double(kronecker_symbol(n, m)) / (double(n) * double(n)));
    const double tol = (m == 1) ? 1.1e-6 : 5e-9;
    CHECK(std::abs(dirichlet_l(cplx(2.0, 0.0), m).real() - acc.value()) < tol);
  }
  // m = 1 degenerates to zeta
  const cplx s(0.8, 11.0);
  CHECK(std::abs(dirichlet_l(s, 1) - riemann_zeta(s)) < 1e-11);
}

TEST_CASE("bessel_j0 against the ascending series and the std library") {
  // The raw series cancels catastrophically past x ~ 12 (terms reach 1e15 at
  // x = 40), so it is only an oracle on the small-argument branch.
  for (double x = 0.0; x <= 12.0; x += 0.11)
    CHECK(std::abs(bessel_j0(x) - oracles::j0_series(x)) < 1e-12);
  for (double x = 0.5; x <= 200.0; x += 1.13)
    CHECK(std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)) < 1e-10);
}

TEST_CASE("adaptive_simpson on smooth and peaked integrands") {
  const double s1 = adaptive_simpson([](double x) { return std::sin(x); }, 0.0,
                                     kPi, 1e-12);
  CHECK(s1 == Approx(2.0).epsilon(1e-11));
  const double s2 = adaptive_simpson(
      [](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-12);
  CHECK(s2 == Approx(std::sqrt(kPi)).epsilon(1e-11));
  const double s3 = adaptive_simpson(
      [](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-10);
  CHECK(s3 == Approx(2.0 * std::atan(100.0) * 100.0).epsilon(1e-8));
}

TEST_CASE("riemann_siegel_theta makes zeta real on the critical line") {
  for (double t : {5.0, 14.0, 33.3, 77.7, 120.0}) {
    const cplx v =
        riemann_zeta(cplx(0.5, t)) * std::exp(cplx(0.0, riemann_siegel_theta(t)));
    CHECK(std::abs(v.imag()) < 1e-9 * (1.0 + std::abs(v)));
  }
}

TEST_CASE("zeta zero oracle brackets the first zeros") {
  const auto zs = oracles::zeta_zero_oracle(10.0, 26.0);
  REQUIRE(zs.size() == 3);
  CHECK(zs[0] == Approx(14.134725141734694).epsilon(1e-9));
  CHECK(zs[1] == Approx(21.022039638771555).epsilon(1e-9));
  CHECK(zs[2] == Approx(25.010857580145688).epsilon(1e-9));
}
