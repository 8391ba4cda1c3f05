#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hecke/arith.hpp"
#include "hecke/numerics.hpp"
#include "oracles.hpp"

using namespace hecke;
using doctest::Approx;

TEST_CASE("kronecker_symbol against the Euler-criterion oracle") {
  for (int64_t m = 1; m <= 45; m += 2)
    for (int64_t n = -2 * m; n <= 2 * m + 1; ++n)
      CHECK(kronecker_symbol(n, m) == oracles::slow_jacobi(n, m));
  CHECK(kronecker_symbol(0, 1) == 1);
  CHECK_THROWS_AS(kronecker_symbol(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(kronecker_symbol(3, -5), std::invalid_argument);
}

TEST_CASE("kronecker_symbol is multiplicative and periodic in n") {
  for (int64_t m : {int64_t(15), int64_t(23), int64_t(39), int64_t(105)}) {
    for (int64_t a = 1; a <= 40; ++a)
      for (int64_t b = 1; b <= 40; ++b)
        CHECK(kronecker_symbol(a * b, m) ==
              kronecker_symbol(a, m) * kronecker_symbol(b, m));
    for (int64_t n = -10; n <= 10; ++n)
      CHECK(kronecker_symbol(n, m) == kronecker_symbol(n + 7 * m, m));
  }
}

TEST_CASE("squarefree, mobius, prime_factors against trial division") {
  for (int64_t n = 1; n <= 3000; ++n) {
    // brute squarefree
    bool sf = true;
    for (int64_t d = 2; d * d <= n; ++d)
      if (n % (d * d) == 0) sf = false;
    CHECK(is_squarefree(n) == sf);
    CHECK(mobius(n) == oracles::slow_mobius(n));
    int64_t prod = 1;
    int64_t prev = 0;
    for (int64_t p : prime_factors(n)) {
      CHECK(p > prev);  // ascending, distinct
      prev = p;
      CHECK(n % p == 0);
      prod *= p;
    }
    // product of distinct primes equals the radical
    int64_t rad = 1;
    for (int64_t p = 2; p <= n; ++p)
      if (n % p == 0) {
        bool prime = true;
        for (int64_t d = 2; d * d <= p; ++d)
          if (p % d == 0) prime = false;
        if (prime) rad *= p;
      }
    if (n <= 300) CHECK(prod == rad);
  }
}

TEST_CASE("FieldParams validates q and exposes chi") {
  CHECK_THROWS_AS(FieldParams(4), std::invalid_argument);    // even
  CHECK_THROWS_AS(FieldParams(5), std::invalid_argument);    // 1 mod 4
  CHECK_THROWS_AS(FieldParams(75), std::invalid_argument);   // not squarefree
  CHECK_THROWS_AS(FieldParams(3), std::invalid_argument);    // extra units
  CHECK_THROWS_AS(FieldParams(-7), std::invalid_argument);
  const FieldParams p23(23);
  CHECK(p23.nu_q == 24);
  CHECK(p23.Q == Approx(std::sqrt(23.0) / (2.0 * oracles::kPi)).epsilon(1e-15));
  const FieldParams p39(39);
  CHECK(p39.nu_q == 56);  // 39 * (4/3) * (14/13)
  for (int64_t n = 1; n <= 100; ++n)
    CHECK(p23.chi(n) == kronecker_symbol(n, 23));
}

TEST_CASE("Factorization validates the divisor and splits chi") {
  const FieldParams p(39);
  CHECK_THROWS_AS(Factorization(p, 5), std::invalid_argument);  // not a divisor
  CHECK_THROWS_AS(Factorization(p, 0), std::invalid_argument);
  const Factorization f(p, 3);
  CHECK(f.v == 3);
  CHECK(f.w == 13);
  for (int64_t n = 1; n <= 200; ++n)
    CHECK(f.chi_v(n) * f.chi_w(n) == p.chi(n));
}

TEST_CASE("twisted_divisor against the direct divisor-pair sum") {
  const FieldParams p(39);
  for (int64_t v : {int64_t(1), int64_t(3), int64_t(13), int64_t(39)}) {
    const Factorization f(p, v);
    for (int64_t n = 1; n <= 2000; ++n) {
      int64_t direct = 0;
      for (int64_t d = 1; d <= n; ++d)
        if (n % d == 0)
          direct += oracles::slow_jacobi(d, v) * oracles::slow_jacobi(n / d, f.w);
      CHECK(twisted_divisor(n, f) == direct);
    }
  }
}

TEST_CASE("tau_chi counts ideals: nonnegative and multiplicative bound") {
  const FieldParams p(23);
  const Factorization trivial(p, 1);
  for (int64_t n = 1; n <= 5000; ++n) {
    const int64_t t = tau_chi(n, p);
    CHECK(t >= 0);
    CHECK(t == twisted_divisor(n, trivial));
  }
}

TEST_CASE("ramanujan_sum against the exponential sum") {
  for (int64_t c = 1; c <= 60; ++c)
    for (int64_t h = -15; h <= 40; ++h) {
      const double direct = oracles::slow_ramanujan(c, h);
      CHECK(std::abs(double(ramanujan_sum(c, h)) - direct) < 1e-8);
    }
  // r_c(0) = phi(c)
  for (int64_t c = 1; c <= 60; ++c) {
    int64_t phi = 0;
    for (int64_t k = 1; k <= c; ++k)
      if (std::gcd(k, c) == 1) ++phi;
    CHECK(ramanujan_sum(c, 0) == phi);
  }
}

TEST_CASE("gauss_sum_real closed values") {
  CHECK(gauss_sum_real(1) == cplx(1.0, 0.0));
  CHECK(std::abs(gauss_sum_real(5) - cplx(std::sqrt(5.0), 0.0)) < 1e-12);
  CHECK(std::abs(gauss_sum_real(13) - cplx(std::sqrt(13.0), 0.0)) < 1e-12);
  CHECK(std::abs(gauss_sum_real(3) - cplx(0.0, std::sqrt(3.0))) < 1e-12);
  CHECK(std::abs(gauss_sum_real(23) - cplx(0.0, std::sqrt(23.0))) < 1e-12);
  CHECK_THROWS_AS(gauss_sum_real(4), std::invalid_argument);
  CHECK_THROWS_AS(gauss_sum_real(9), std::invalid_argument);
  CHECK_THROWS_AS(gauss_sum_real(-3), std::invalid_argument);
}

namespace {
// L(1, chi_q) from the character series; enough accuracy for sigma ratios.
double l1_series(int64_t q) {
  KahanSum acc;
  for (int64_t n = 1; n <= 400000; ++n)
    acc.add(double(kronecker_symbol(n, q)) / double(n));
  return acc.value();
}
}  // namespace

TEST_CASE("sigma_shift matches its defining Ramanujan-sum series") {
  const FieldParams p(39);
  const double L1 = l1_series(39);
  for (int64_t v : {int64_t(1), int64_t(3)}) {
    const Factorization f(p, v);
    for (int64_t h : {int64_t(1), int64_t(2), int64_t(3), int64_t(4),
                      int64_t(6), int64_t(-5), int64_t(12), int64_t(-9)}) {
      double tail = 0.0;
      const double series = oracles::sigma_series(h, 39, v, L1, 100000, &tail);
      const double closed = sigma_shift(h, f, L1);
      CHECK(std::abs(closed - series) <= tail);
      CHECK(std::abs(closed - series) < 2e-3);  // the bound is not vacuous
    }
  }
  CHECK_THROWS_AS(sigma_shift(0, Factorization(p, 1), 1.0),
                  std::invalid_argument);
}

TEST_CASE("sigma_shift is even in h") {
  const FieldParams p(39);
  const Factorization f(p, 3);
  for (int64_t h = 1; h <= 30; ++h)
    CHECK(sigma_shift(h, f, 1.7) == Approx(sigma_shift(-h, f, 1.7)).epsilon(1e-15));
}

TEST_CASE("sigma_zeta matches the partial Dirichlet series of sigma_shift") {
  const FieldParams p(39);
  const double L1 = l1_series(39);
  for (int64_t v : {int64_t(1), int64_t(3)}) {
    const Factorization f(p, v);
    for (const cplx s : {cplx(2.5, 0.0), cplx(3.0, 1.3)}) {
      KahanSumC acc;
      const int64_t H = 6000;
      for (int64_t h = 1; h <= H; ++h)
        acc.add(sigma_shift(h, f, L1) * std::pow(cplx(double(h), 0.0), -s));
      // |sigma(h)| <= 2 * zeta_q(2)/zeta(2) * sigma_{-1}(h) * L1^2 <= 5 L1^2
      // log h, so the tail is below 5 L1^2 * integral_H log(x) x^{-Re s} dx.
      const double sr = s.real();
      const double tail = 5.0 * L1 * L1 * std::pow(double(H), 1.0 - sr) *
                          (std::log(double(H)) / (sr - 1.0) +
                           1.0 / ((sr - 1.0) * (sr - 1.0)));
      CHECK(std::abs(sigma_zeta(s, f, L1) - acc.value()) <= tail);
      CHECK(std::abs(sigma_zeta(s, f, L1) - acc.value()) < 1e-2);
    }
  }
  CHECK_THROWS_AS(sigma_zeta(cplx(1.0, 0.0), Factorization(p, 1), 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(sigma_zeta(cplx(0.0, 0.0), Factorization(p, 1), 1.0),
                  std::domain_error);
}

TEST_CASE("sigma_zeta residues match shrinking-circle limits") {
  const FieldParams p(39);
  const double L1 = l1_series(39);
  for (int64_t v : {int64_t(1), int64_t(3)}) {
    const Factorization f(p, v);
    // Richardson on f(eps) = eps * Z(pole + eps): removes the O(eps) and
    // O(eps^2) analytic terms, leaving the residue to O(eps^3).
    const auto limit_at = [&](cplx pole) {
      const auto fe = [&](double e) {
        return (cplx(e, 0.0) * sigma_zeta(pole + cplx(e, 0.0), f, L1)).real();
      };
      const double e0 = 1e-2;
      return (8.0 * fe(e0 / 4.0) - 6.0 * fe(e0 / 2.0) + fe(e0)) / 3.0;
    };
    CHECK(std::abs(limit_at(cplx(1.0, 0.0)) - sigma_zeta_residue_at_1(f, L1)) <
          1e-6);
    CHECK(std::abs(limit_at(cplx(0.0, 0.0)) - sigma_zeta_residue_at_0(f, L1)) <
          1e-6);
  }
  // v = 1 channel has the s = 1 pole; the split channel does not.
  CHECK(sigma_zeta_residue_at_1(Factorization(p, 1), L1) ==
        Approx(L1 * L1).epsilon(1e-15));
  CHECK(sigma_zeta_residue_at_1(Factorization(p, 3), L1) == 0.0);
}
