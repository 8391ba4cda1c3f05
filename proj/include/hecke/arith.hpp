#pragma once
// Elementary arithmetic layer: Jacobi/Kronecker symbols, field parameters for
// Q(sqrt(-q)), coprime factorizations q = v*w, twisted divisor functions,
// Ramanujan sums, real-character Gauss sums, and the shift density sigma(h)
// together with its Dirichlet series Z(s).
#include <complex>
#include <cstdint>
#include <vector>

namespace hecke {

using std::int64_t;
using cplx = std::complex<double>;

// Jacobi symbol (n|m) extended to all integers n; m must be odd and positive.
// Periodic in n with period m; (0|1) = 1 by convention.
int kronecker_symbol(int64_t n, int64_t m);

bool is_squarefree(int64_t n);
std::vector<int64_t> prime_factors(int64_t n);  // distinct primes, ascending
int mobius(int64_t n);

// Parameters of the imaginary quadratic field of discriminant -q.
// Requires q odd, squarefree, q = 3 (mod 4), q > 4 (q = 3 is excluded: its
// extra units break the two-units-per-ideal normalization used throughout).
struct FieldParams {
  int64_t q = 0;
  double Q = 0.0;     // sqrt(q) / (2 pi), the gamma-factor scale
  int64_t nu_q = 0;   // q * prod_{p|q} (1 + 1/p)
  explicit FieldParams(int64_t q_);
  int chi(int64_t n) const;  // chi(n) = (n|q)
};

// Coprime splitting q = v * w (q squarefree, so any divisor works).
struct Factorization {
  int64_t q = 0, v = 0, w = 0;
  Factorization(const FieldParams& params, int64_t v_);
  int chi_v(int64_t n) const { return kronecker_symbol(n, v); }
  int chi_w(int64_t n) const { return kronecker_symbol(n, w); }
};

// tau(n; chi_v, chi_w) = sum_{n1*n2 = n} chi_v(n1) chi_w(n2), n >= 1.
int64_t twisted_divisor(int64_t n, const Factorization& f);

// Plain real-character divisor sum tau(n, chi) = sum_{d|n} chi(d) (the v = 1
// channel); always >= 0 since it counts ideals of norm n.
int64_t tau_chi(int64_t n, const FieldParams& params);

// Ramanujan sum r_c(h) = sum_{d | (c,h)} d mu(c/d); r_c(0) = phi(c).
int64_t ramanujan_sum(int64_t c, int64_t h);

// Gauss sum of the real character mod v (v odd squarefree positive):
// tau(chi_v) = sqrt(v) for v = 1 (mod 4), i sqrt(v) for v = 3 (mod 4).
// Internally validates the closed form against the direct exponential sum
// and throws std::runtime_error if they disagree beyond 1e-10.
cplx gauss_sum_real(int64_t v);

// Shift density sigma(h) for the Eisenstein main term: exact multiplicative
// closed form times L1^2 (L1 = L(1, chi)). Even in h; h != 0.
double sigma_shift(int64_t h, const Factorization& f, double L1);

// Dirichlet series Z(s) = sum_{h>=1} sigma(h) h^{-s} in closed form:
// poles at s = 1 (residue L1^2 iff v = 1 or w = 1) and s = 0.
cplx sigma_zeta(cplx s, const Factorization& f, double L1);

// Residues of Z(s) at s = 1 and s = 0 (closed forms, for cross-checks).
double sigma_zeta_residue_at_1(const Factorization& f, double L1);
double sigma_zeta_residue_at_0(const Factorization& f, double L1);

}  // namespace hecke
