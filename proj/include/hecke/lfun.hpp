#pragma once
// Hecke L-function machinery for the class group character family: coefficient
// caches, L(1,chi), the smoothed approximate functional equation, completed
// Lambda, Hardy Z, mollifier partial sums, and the Rankin-Selberg identity.
#include <cstdint>
#include <vector>

#include "hecke/arith.hpp"
#include "hecke/numerics.hpp"
#include "hecke/quadforms.hpp"

namespace hecke {

// lambda(n) = (1/2) sum_A psi(A) r_A(n) for 0 <= n <= n_max, computed by lattice
// enumeration over each reduced form. Entry 0 holds delta_psi * h/2. Imaginary
// parts cancel in pairs (A, A^{-1}); the residual is asserted < 1e-9 on a prefix.
std::vector<double> hecke_coefficients(const ClassGroup& group,
                                       const ClassCharacter& psi,
                                       std::int64_t n_max);

// Dirichlet inverse: sum_{ab=n} lambda(a) lambda_star(b) = [n == 1].
// Index 0 of the result is unused (set to 0).
std::vector<double> inverse_coefficients(const std::vector<double>& lambda);

// tau(n, chi) = sum_{d|n} chi(d) for all n <= n_max by a divisor sieve.
std::vector<std::int32_t> tau_chi_sieve(const FieldParams& params,
                                        std::int64_t n_max);

// L(1, chi) two ways: pi*h/sqrt(q) from class enumeration and the truncated
// character series with certified tail <= q/M. Throws if they disagree beyond
// the bound. Returns the class-number value; optionally reports the series
// value and its tail bound.
double L_one_chi(const FieldParams& params, double* series_out = nullptr,
                 double* tail_bound_out = nullptr);

// V_s(y) = (1/2 pi i) int_(1) [Gamma(s+u)/Gamma(s)] G(u)/u y^{-u} du with
// G(u) = (cos(pi u / A))^{-A}, by trapezoid quadrature on Re u = 1 over
// |Im u| <= |Im s| + 60. Tends to 1 as y -> 0 and decays like (y/|s|)^{-A}.
cplx test_function_V(cplx s, double y, int A_test, double step = 0.05);

// X(s) = Q^{1-2s} Gamma(1-s)/Gamma(s); |X| = 1 on the critical line.
cplx gamma_factor_X(cplx s, const FieldParams& params);

struct EvalResult {
  cplx value;
  std::int64_t truncation_N = 0;
  double est_error = 0.0;  // certified truncation tail (+ quadrature estimate)
};

struct HeckeLSeries {
  FieldParams params;
  ClassGroup group;
  ClassCharacter psi;
  int A_test;
  double Q;        // sqrt(q) / (2 pi)
  double L1_chi;   // pi h / sqrt(q)
  std::vector<double> lambda;       // lambda[n], n <= current cache size
  std::vector<double> lambda_star;  // Dirichlet inverse cache

  HeckeLSeries(const ClassGroup& g, const ClassCharacter& character,
               int A = 8);
  bool trivial_psi() const { return psi.index == 0; }
  void ensure_lambda(std::int64_t n_max);
  void ensure_lambda_star(std::int64_t n_max);
};

// Smoothed approximate functional equation on 0 < Re s < 1. For the trivial
// character the polar correction Q^{1-s} L(1,chi)/Gamma(s) * [G(s-1)/(s-1) -
// G(s)/s] is added (both residues of G(u)/u Lambda(s+u), at u = 1-s and
// u = -s; the pair is forced by Lambda(s) = Lambda(1-s) and by the residue
// +L(1,chi) at s = 1).
//
// Truncation: V_s(y) decays only like y^{-A/2} (log y)^{A-1} -- the first
// singularity right of the contour is the order-A pole of G at u = A/2 -- so
// N starts at the floor ceil(Q(|s| + 40 A)) and grows until a certified
// right-shifted-contour tail bound falls below eps_target (N capped at 2e6;
// the actual bound always lands in est_error). est_error additionally picks
// up a step-halving quadrature estimate when estimate_error is set.
EvalResult L_value(HeckeLSeries& series, cplx s, bool estimate_error = true,
                   double eps_target = 3e-9);

// Lambda(s) = Q^s Gamma(s) L(s); satisfies Lambda(s) = Lambda(1-s).
cplx completed_lambda(HeckeLSeries& series, cplx s);

// Z(t) = e^{i theta(t)} L(1/2 + it) with theta(t) = t log Q + Im log Gamma(1/2 + it).
// Real because the coefficients are real and the root number is +1; throws if
// the imaginary residual exceeds 1e-7 (signals a branch or coefficient bug).
double hardy_Z(HeckeLSeries& series, double t, double eps_target = 3e-9);

struct MollifierSums {
  cplx N_value;  // sum_{n <= cutoff} lambda(n) n^{-s}
  cplx M_value;  // sum_{m <= cutoff} lambda_star(m) m^{-s}
  cplx B_value;  // M*N - 1; coefficients supported beyond the cutoff
  std::int64_t cutoff;
};

// Partial sums with cutoff q^4. Refuses q > 60 (cache blow-up).
MollifierSums mollifier_sums(HeckeLSeries& series, cplx s);

struct RankinResult {
  cplx series;         // sum_{n <= N} tau(n,chi)^2 n^{-s}
  cplx closed_form;    // zeta(s)^2 L(s,chi)^2 / zeta(2s) * prod_{p|q} (1+p^{-s})^{-1}
  double tail_bound;   // certified bound on the dropped tail (real-part decay)
  double alpha_hat;    // Richardson limit of (s-1)^2 R_K(s) at s -> 1+
  double alpha_closed; // (q/nu(q)) L(1,chi)^2 / zeta(2)
  std::int64_t N;
};

// Rankin-Selberg identity check at Re s > 1; N is the series truncation.
RankinResult rankin_selberg_check(const FieldParams& params, cplx s,
                                  std::int64_t N = 1000000);

}  // namespace hecke
