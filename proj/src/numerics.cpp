#include "hecke/numerics.hpp"

#include <cmath>
#include <stdexcept>

#include "hecke/arith.hpp"

namespace hecke {

namespace {

// B_{2k} for the Stirling / Euler-Maclaurin tails.
const double kBern2k[] = {
    1.0 / 6,        -1.0 / 30,       1.0 / 42,          -1.0 / 30,
    5.0 / 66,       -691.0 / 2730,   7.0 / 6,           -3617.0 / 510,
    43867.0 / 798,  -174611.0 / 330, 854513.0 / 138,    -236364091.0 / 2730,
    8553103.0 / 6,
};

bool near_nonpositive_integer(cplx z) {
  if (z.real() > 0.25) return false;
  double r = std::round(z.real());
  return r <= 0.0 && std::abs(z.real() - r) < 1e-13 && std::abs(z.imag()) < 1e-13;
}

// log sin(pi z) without overflow for large |Im z|, principal determination
// suitable for the reflection formula in the strip we use (|Re z| < 1).
cplx log_sin_pi(cplx z) {
  const double pi = std::acos(-1.0);
  if (std::abs(z.imag()) < 8.0) return std::log(std::sin(pi * z));
  // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / 2i; factor out the dominant exponential.
  cplx ipz = cplx(0, 1) * pi * z;
  if (z.imag() > 0)
    return -ipz + std::log((std::exp(2.0 * ipz) - 1.0) / cplx(0, 2));
  return ipz + std::log((1.0 - std::exp(-2.0 * ipz)) / cplx(0, 2));
}

}  // namespace

cplx log_gamma(cplx z) {
  if (near_nonpositive_integer(z)) throw std::domain_error("log_gamma: pole");
  const double pi = std::acos(-1.0);
  if (z.real() < 0.0) {
    // Reflection; adequate away from poles (we only use |Re z| bounded).
    return std::log(pi) - log_sin_pi(z) - log_gamma(1.0 - z);
  }
  // Shift until |z| is large enough for the asymptotic series.
  cplx shift = 0.0;
  while (std::abs(z) < 32.0) {
    shift -= std::log(z);
    z += 1.0;
  }
  cplx lg = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi);
  cplx zpow = z;  // z^{2k-1}
  cplx z2 = z * z;
  for (int k = 1; k <= 13; ++k) {
    lg += kBern2k[k - 1] / (double(2 * k) * double(2 * k - 1) * zpow);
    zpow *= z2;
  }
  return lg + shift;
}

cplx digamma(cplx z) {
  if (near_nonpositive_integer(z)) throw std::domain_error("digamma: pole");
  const double pi = std::acos(-1.0);
  if (z.real() < 0.0) {
    // psi(z) = psi(1-z) - pi cot(pi z)
    cplx ct = std::cos(pi * z) / std::sin(pi * z);
    return digamma(1.0 - z) - pi * ct;
  }
  cplx shift = 0.0;
  while (std::abs(z) < 32.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  cplx ps = std::log(z) - 0.5 / z;
  cplx z2 = z * z;
  cplx zpow = z2;  // z^{2k}
  for (int k = 1; k <= 13; ++k) {
    ps -= kBern2k[k - 1] / (double(2 * k) * zpow);
    zpow *= z2;
  }
  return ps + shift;
}

cplx hurwitz_zeta(cplx s, double a) {
  if (a <= 0.0) throw std::domain_error("hurwitz_zeta: a <= 0");
  if (std::abs(s - cplx(1.0, 0.0)) < 1e-14)
    throw std::domain_error("hurwitz_zeta: s = 1 pole");
  // Euler-Maclaurin: direct terms to M, then the integral + correction tail.
  int M = std::max(24, int(std::ceil(1.5 * std::abs(s.imag()))) + 8);
  KahanSumC head;
  for (int k = 0; k < M; ++k) head.add(std::exp(-s * std::log(a + k)));
  double x = a + M;
  cplx lx = std::log(x);
  cplx tail = std::exp((1.0 - s) * lx) / (s - 1.0) + 0.5 * std::exp(-s * lx);
  // sum_j B_{2j}/(2j)! * (s)(s+1)...(s+2j-2) * x^{-s-2j+1}
  cplx poch = s;                       // rising product up to s+2j-2
  cplx xpow = std::exp(-(s + 1.0) * lx);  // x^{-s-2j+1} at j=1
  double fact = 2.0;                   // (2j)!
  for (int j = 1; j <= 12; ++j) {
    double b2j = kBern2k[j - 1];
    tail += b2j / fact * poch * xpow;
    poch *= (s + double(2 * j - 1)) * (s + double(2 * j));
    xpow /= x * x;
    fact *= double(2 * j + 1) * double(2 * j + 2);
  }
  return head.value() + tail;
}

cplx riemann_zeta(cplx s) { return hurwitz_zeta(s, 1.0); }

cplx dirichlet_l(cplx s, std::int64_t m) {
  if (m == 1) return riemann_zeta(s);
  // L(s, chi) = m^{-s} sum_{r=1..m} chi(r) zeta_H(s, r/m); the 1/(s-1) pieces
  // cancel across r because sum_r chi(r) = 0, so s near 1 is fine term-by-term.
  KahanSumC acc;
  for (std::int64_t r = 1; r <= m; ++r) {
    int ch = kronecker_symbol(r, m);
    if (ch == 0) continue;
    acc.add(double(ch) * hurwitz_zeta(s, double(r) / double(m)));
  }
  return std::exp(-s * std::log(double(m))) * acc.value();
}

double bessel_j0(double x) {
  x = std::fabs(x);
  if (x < 12.0) {
    // Ascending series sum (-1)^k (x/2)^{2k} / (k!)^2 in long double; the
    // worst cancellation (x near 12) stays below ~1e-14 in the result.
    long double q = (long double)(x) * x / 4.0L;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k <= 60; ++k) {
      term *= -q / ((long double)k * k);
      sum += term;
      if (std::fabs((double)term) < 1e-22 && k > 8) break;
    }
    return (double)sum;
  }
  // Hankel asymptotic: J0 = sqrt(2/(pi x)) [P cos(x-pi/4) - Q sin(x-pi/4)].
  const long double pi = 3.14159265358979323846264338327950288L;
  long double lx = x;
  long double p = 1.0L, qq = 0.0L;
  long double num = 1.0L;  // prod (2j-1)^2 with alternating assembly below
  long double denp = 1.0L; // k! (8x)^k
  // term_k = prod_{j=1..k} (2j-1)^2 / (k! (8x)^k), alternating into P (even k)
  // and Q (odd k) with signs P: +,-,+...  Q: +,-,+...
  long double t = 1.0L;
  for (int k = 1; k <= 22; ++k) {
    num = (long double)(2 * k - 1) * (2 * k - 1);
    denp = (long double)k * 8.0L * lx;
    t *= num / denp;
    if (k % 2 == 1) {
      // Q = -t1 + t3 - t5 + ...
      qq += ((k / 2) % 2 == 0 ? -t : t);
    } else {
      // P = 1 - t2 + t4 - ...
      p += ((k / 2) % 2 == 1 ? -t : t);
    }
  }
  long double w = lx - pi / 4.0L;
  long double r = std::sqrt(2.0L / (pi * lx)) *
                  (p * std::cos(w) - qq * std::sin(w));
  return (double)r;
}

namespace {
double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}
}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
  if (!(b > a)) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

double riemann_siegel_theta(double t) {
  const double pi = std::acos(-1.0);
  return log_gamma(cplx(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(pi);
}

}  // namespace hecke
