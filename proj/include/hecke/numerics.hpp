#pragma once
// Shared numerical kernels: compensated summation, complex log-gamma/digamma
// (Stirling with argument shift), Hurwitz/Riemann zeta and Dirichlet L for real
// characters (Euler-Maclaurin), Bessel J0, and adaptive Simpson quadrature.
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace hecke {

using cplx = std::complex<double>;

/* Kahan compensated accumulator; required for sums with more than ~1e4 terms. */
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

struct KahanSumC {
  KahanSum re, im;
  void add(cplx z) { re.add(z.real()); im.add(z.imag()); }
  cplx value() const { return {re.value(), im.value()}; }
};

// Principal-branch log Gamma, continuous on the right half-plane; reflection
// for Re z < 1/2. Accuracy ~1e-13 relative. Poles (z = 0, -1, ...) throw.
cplx log_gamma(cplx z);

// Digamma with the same shift-then-Stirling scheme.
cplx digamma(cplx z);

// Hurwitz zeta via Euler-Maclaurin; a > 0, s != 1. Good to ~1e-12 for |Im s| <= 200.
cplx hurwitz_zeta(cplx s, double a);

cplx riemann_zeta(cplx s);

// L(s, chi_m) for the real character chi_m(n) = (n|m), m odd squarefree positive.
// m = 1 degenerates to Riemann zeta. Independent of the Hecke machinery: used as
// the cross-check path for genus factorizations and zero oracles.
cplx dirichlet_l(cplx s, std::int64_t m);

// J0: ascending series below 12, Hankel asymptotic above (long double internally;
// both branches agree to ~1e-13 at the switchover).
double bessel_j0(double x);

// Adaptive Simpson with absolute tolerance; depth-capped.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol);

// Phase of the completed zeta on the critical line (for the independent zeta
// zero oracle): theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi.
double riemann_siegel_theta(double t);

}  // namespace hecke
