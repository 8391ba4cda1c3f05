#pragma once
// Independent slow oracles for the test suites. Everything here recomputes
// from first principles (trial division, direct exponential sums, raw series)
// and deliberately avoids the fast paths under src/.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hecke/numerics.hpp"

namespace oracles {

using cplx = std::complex<double>;
using std::int64_t;

constexpr double kPi = 3.141592653589793238462643383279502884;

// Legendre symbol by Euler's criterion, extended to odd m by factoring.
inline int64_t mod_pow(int64_t b, int64_t e, int64_t m) {
  int64_t r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = (__int128(r) * b) % m;
    b = (__int128(b) * b) % m;
    e >>= 1;
  }
  return r;
}

inline int slow_legendre(int64_t n, int64_t p) {  // p odd prime
  n %= p;
  if (n < 0) n += p;
  if (n == 0) return 0;
  const int64_t e = mod_pow(n, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

inline int slow_jacobi(int64_t n, int64_t m) {  // m odd positive
  if (m <= 0 || m % 2 == 0) throw std::invalid_argument("slow_jacobi: bad m");
  int result = 1;
  for (int64_t p = 3; p * p <= m; p += 2)
    while (m % p == 0) {
      m /= p;
      result *= slow_legendre(n, p);
    }
  if (m > 1) result *= slow_legendre(n, m);
  return result;
}

// Ramanujan sum as the raw exponential sum over units mod c.
inline double slow_ramanujan(int64_t c, int64_t h) {
  double s = 0.0;
  for (int64_t k = 1; k <= c; ++k)
    if (std::gcd(k, c) == 1) s += std::cos(2.0 * kPi * double(k) * double(h) / double(c));
  return s;
}

inline int slow_mobius(int64_t n) {
  if (n < 1) throw std::invalid_argument("slow_mobius: n < 1");
  int m = 1;
  for (int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
  return n > 1 ? -m : m;
}

// J0 ascending series in long double; trustworthy for |x| <= 40.
inline double j0_series(double x) {
  const long double q = -(long double)(x) * x / 4.0L;
  long double term = 1.0L, sum = 1.0L;
  for (int k = 1; k <= 120; ++k) {
    term *= q / ((long double)k * k);
    sum += term;
    if (std::abs((double)term) < 1e-22 * std::max(1.0, std::abs((double)sum))) break;
  }
  return (double)sum;
}

// sigma(h) by its defining Ramanujan-sum series: partial sum over moduli
// c <= cutoff with gcd(c, q) = v plus the mirror channel, scaled by L1^2.
// tail_out receives the certified remainder bound sigma_1(|h|) (v + w)/cutoff.
inline double sigma_series(int64_t h, int64_t q, int64_t v, double L1,
                           int64_t cutoff, double* tail_out = nullptr) {
  const int64_t w = q / v;
  const int64_t habs = h < 0 ? -h : h;
  // r_c(h) via divisors of gcd(c, h): sum_{d | (c,h)} d mu(c/d)
  const auto rc = [&](int64_t c) -> double {
    const int64_t g = std::gcd(c, habs);
    double s = 0.0;
    for (int64_t d = 1; d * d <= g; ++d) {
      if (g % d != 0) continue;
      s += double(d) * slow_mobius(c / d);
      if (d != g / d) s += double(g / d) * slow_mobius(c / (g / d));
    }
    return s;
  };
  const auto channel = [&](int64_t u, int64_t other) {
    hecke::KahanSum acc;  // c = u*m with gcd(m, other) = 1
    for (int64_t m = 1; u * m <= cutoff; ++m) {
      if (std::gcd(m, other) != 1) continue;
      const int64_t c = u * m;
      acc.add(double(u) * rc(c) / (double(c) * double(c)));
    }
    return acc.value();
  };
  if (tail_out) {
    int64_t sigma1 = 0;
    for (int64_t d = 1; d <= habs; ++d)
      if (habs % d == 0) sigma1 += d;
    *tail_out = double(sigma1) * double(v + w) / double(cutoff) * L1 * L1;
  }
  return (channel(v, w) + channel(w, v)) * L1 * L1;
}

// Zeros of Riemann zeta on the critical line in [t_lo, t_hi], found through
// the numerics layer only (Euler-Maclaurin zeta + the theta phase); this path
// never touches class groups or Hecke coefficients.
inline std::vector<double> zeta_zero_oracle(double t_lo, double t_hi) {
  const auto hardy = [](double t) {
    const cplx z = hecke::riemann_zeta(cplx(0.5, t));
    const double th = hecke::riemann_siegel_theta(t);
    const cplx v = z * std::exp(cplx(0.0, th));
    if (std::abs(v.imag()) > 1e-6 * std::max(1.0, std::abs(v)))
      throw std::runtime_error("zeta_zero_oracle: hardy function not real");
    return v.real();
  };
  std::vector<double> zeros;
  const double step = 0.05;
  double a = t_lo, fa = hardy(a);
  for (double b = a + step; a < t_hi; a = b, b += step) {
    if (b > t_hi) b = t_hi;
    double fb = hardy(b);
    if (fa == 0.0) zeros.push_back(a);
    if (fa * fb < 0.0) {
      double lo = a, hi = b, flo = fa;
      for (int it = 0; it < 80 && hi - lo > 1e-11; ++it) {
        const double mid = 0.5 * (lo + hi), fm = hardy(mid);
        if (flo * fm <= 0.0)
          hi = mid;
        else {
          lo = mid;
          flo = fm;
        }
      }
      zeros.push_back(0.5 * (lo + hi));
    }
    fa = fb;
    if (a >= t_hi) break;
  }
  return zeros;
}

// ------------------------------------------------------------ CLI driver ----

inline std::string cli_binary() {
  const char* p = std::getenv("HECKE_CLI_BIN");
  if (p == nullptr || *p == '\0')
    throw std::runtime_error("HECKE_CLI_BIN is not set");
  return p;
}

struct CliResult {
  int exit_code = -1;
  std::string out, err;
};

inline std::string make_temp_dir() {
  char tmpl[] = "/tmp/hecke_test_XXXXXX";
  char* d = mkdtemp(tmpl);
  if (d == nullptr) throw std::runtime_error("mkdtemp failed");
  return d;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI with stdout/stderr captured to files under dir.
inline CliResult run_cli(const std::string& args, const std::string& dir,
                         const std::string& cache_dir = "") {
  const std::string out_f = dir + "/stdout.txt", err_f = dir + "/stderr.txt";
  std::string cmd;
  cmd += "HECKE_CACHE=" + (cache_dir.empty() ? dir + "/cache" : cache_dir) + " ";
  cmd += cli_binary() + " " + args + " >" + out_f + " 2>" + err_f;
  const int rc = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = (rc == -1) ? -1 : WEXITSTATUS(rc);
  r.out = read_file(out_f);
  r.err = read_file(err_f);
  return r;
}

}  // namespace oracles
