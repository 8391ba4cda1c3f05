#pragma once
// Smooth bump construction, brute-force shifted convolution sums B(h), the
// Eisenstein-channel main-term prediction sigma(h) * overlap, error-exponent
// fits over geometric X sweeps, and the twisted-divisor summation identity
// with additive twists e(an/c).
#include <cstdint>
#include <vector>

#include "hecke/arith.hpp"
#include "hecke/lfun.hpp"

namespace hecke {

// kappa * exp(-1/(u(1-u))) with u = x/X - 1: supported exactly on [X, 2X];
// kappa is grid-verified so that x^nu |g^(nu)(x)| <= 1 for nu = 0, 1, 2.
struct BumpFunction {
  double X = 0.0;
  double kappa = 1.0;
  double value(double x) const;
  double derivative(double x, int nu) const;  // nu = 0, 1, 2
};

// X >= 1/2; kappa starts at 1 and auto-shrinks once if the 10^4-point grid
// check finds a bound violation (a second failure throws).
BumpFunction make_bump(double X);

double bump_integral(const BumpFunction& g);

// integral of g1(x + h) g2(x) dx; 0 when the shifted supports are disjoint.
double overlap_integral(const BumpFunction& g1, const BumpFunction& g2,
                        std::int64_t h);

// tau(n; chi_v, chi_w) for 1 <= n <= n_max via the divisor-pair sieve.
std::vector<std::int64_t> twisted_divisor_sieve(const Factorization& f,
                                                std::int64_t n_max);

// B(h) = sum_{m - n = h} lambda(m) lambda(n) g1(m) g2(n) by direct summation
// (coefficients are real in every channel). h >= 1; supports up to 10^6.
double shifted_convolution_brute(HeckeLSeries& series, std::int64_t h,
                                 const BumpFunction& g1, const BumpFunction& g2);
double shifted_convolution_brute(const Factorization& f, std::int64_t h,
                                 const BumpFunction& g1, const BumpFunction& g2);

// Eisenstein-channel prediction sigma(h) * integral g1(x+h) g2(x) dx.
double shifted_convolution_main(std::int64_t h, const Factorization& f,
                                const BumpFunction& g1, const BumpFunction& g2,
                                double L1);

struct ExperimentRow {
  double X = 0.0, B = 0.0, main = 0.0, abs_error = 0.0;
};

struct ExponentFit {
  double slope = 0.0, intercept = 0.0;
  bool gate = false;         // slope <= 0.85
  bool error_floor = false;  // every |B - main| below 1e-9: nothing to fit
  std::vector<ExperimentRow> rows;
};

// Least-squares slope of log|B(h) - main(h)| against log X over an ascending
// sweep (>= 3 points, max X <= 10^6). The Eisenstein overload subtracts the
// sigma(h) main term; the series overload subtracts it only for real psi
// (trivial or genus), since the cusp channel has no main term; the control
// uses lambda(n) = 1, whose raw size grows like X (gate-sanity slope ~1).
// Sweep points are independent; jobs > 1 computes them on worker threads
// with the row order (hence the fit) unchanged.
ExponentFit exponent_experiment(const Factorization& f, std::int64_t h,
                                const std::vector<double>& X_list, double L1,
                                int jobs = 1);
ExponentFit exponent_experiment(HeckeLSeries& series, std::int64_t h,
                                const std::vector<double>& X_list,
                                int jobs = 1);
ExponentFit exponent_experiment_control(std::int64_t h,
                                        const std::vector<double>& X_list,
                                        int jobs = 1);

struct VoronoiResult {
  cplx lhs = 0.0;      // sum tau(n; chi_v, chi_w) e(an/c) g(n)
  cplx leading = 0.0;  // Gauss-sum leading term (zero unless v|c or w|c)
  cplx dual = 0.0;     // (2 pi sigma / c sqrt(r)) * dual Bessel sum
  cplx rhs = 0.0;      // leading + dual
  double residual = 0.0;
  std::int64_t dual_terms = 0;
  bool tail_converged = false;
  // Set when flipping the dual sign would fit far better: the sigma sign
  // chain is easy to mis-transcribe, so this is surfaced, never absorbed.
  bool sign_flip_suspected = false;
};

// Both sides of the additively twisted summation identity: the n-sum against
// e(an/c) versus Gauss-sum leading term plus J0-Bessel dual sum over the
// reflected factorization q = v* w*. Requires gcd(a, c) = 1 and c <= 20; the
// dual sum is truncated once 8 consecutive oscillatory integrals fall below
// dual_threshold.
VoronoiResult voronoi_verify(const Factorization& f, std::int64_t c,
                             std::int64_t a, const BumpFunction& g,
                             double dual_threshold = 1e-12);

}  // namespace hecke
