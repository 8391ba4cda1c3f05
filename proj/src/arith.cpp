#include "hecke/arith.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hecke/numerics.hpp"

namespace hecke {

namespace {

using int128 = __int128;

int128 gcd128(int128 a, int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Exact rational scratch type for the sigma(h) closed form.
struct Frac {
  int128 n = 0, d = 1;
  Frac() = default;
  Frac(int128 nn, int128 dd) : n(nn), d(dd) { reduce(); }
  void reduce() {
    if (d < 0) { n = -n; d = -d; }
    int128 g = gcd128(n, d);
    if (g > 1) { n /= g; d /= g; }
  }
  Frac operator*(const Frac& o) const { return Frac(n * o.n, d * o.d); }
  Frac operator+(const Frac& o) const { return Frac(n * o.d + o.n * d, d * o.d); }
  double to_double() const { return double(n) / double(d); }
};

}  // namespace

int kronecker_symbol(int64_t n, int64_t m) {
  if (m <= 0 || m % 2 == 0)
    throw std::invalid_argument("kronecker_symbol: m must be odd positive");
  n %= m;
  if (n < 0) n += m;
  int result = 1;
  while (n != 0) {
    while (n % 2 == 0) {
      n /= 2;
      int64_t r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(n, m);
    if (n % 4 == 3 && m % 4 == 3) result = -result;
    n %= m;
  }
  return m == 1 ? result : 0;
}

bool is_squarefree(int64_t n) {
  if (n <= 0) return false;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  return true;
}

std::vector<int64_t> prime_factors(int64_t n) {
  std::vector<int64_t> ps;
  if (n < 0) n = -n;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

int mobius(int64_t n) {
  if (n <= 0) throw std::invalid_argument("mobius: n must be positive");
  int k = 0;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      ++k;
    }
  }
  if (n > 1) ++k;
  return k % 2 == 0 ? 1 : -1;
}

FieldParams::FieldParams(int64_t q_) : q(q_) {
  if (q <= 4) throw std::invalid_argument("FieldParams: q must exceed 4");
  if (q % 2 == 0 || q % 4 != 3)
    throw std::invalid_argument("FieldParams: q must be odd with q = 3 (mod 4)");
  if (!is_squarefree(q)) throw std::invalid_argument("FieldParams: q must be squarefree");
  Q = std::sqrt(double(q)) / (2.0 * std::acos(-1.0));
  nu_q = q;
  for (int64_t p : prime_factors(q)) nu_q = nu_q / p * (p + 1);
  if (kronecker_symbol(-1, q) != -1)
    throw std::logic_error("FieldParams: chi(-1) != -1");  // unreachable for q = 3 (mod 4)
}

int FieldParams::chi(int64_t n) const { return kronecker_symbol(n, q); }

Factorization::Factorization(const FieldParams& params, int64_t v_)
    : q(params.q), v(v_) {
  if (v <= 0 || q % v != 0)
    throw std::invalid_argument("Factorization: v must be a positive divisor of q");
  w = q / v;
  if (std::gcd(v, w) != 1)
    throw std::invalid_argument("Factorization: v and w must be coprime");
}

int64_t twisted_divisor(int64_t n, const Factorization& f) {
  if (n < 1) throw std::invalid_argument("twisted_divisor: n must be positive");
  int64_t s = 0;
  for (int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int64_t e = n / d;
    s += int64_t(f.chi_v(d)) * f.chi_w(e);
    if (d != e) s += int64_t(f.chi_v(e)) * f.chi_w(d);
  }
  return s;
}

int64_t tau_chi(int64_t n, const FieldParams& params) {
  if (n < 1) throw std::invalid_argument("tau_chi: n must be positive");
  int64_t s = 0;
  for (int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    s += params.chi(d);
    if (d != n / d) s += params.chi(n / d);
  }
  return s;
}

int64_t ramanujan_sum(int64_t c, int64_t h) {
  if (c < 1) throw std::invalid_argument("ramanujan_sum: c must be positive");
  if (h < 0) h = -h;
  int64_t g = h == 0 ? c : std::gcd(c, h);
  int64_t s = 0;
  for (int64_t d = 1; d * d <= g; ++d) {
    if (g % d != 0) continue;
    s += d * mobius(c / d);
    if (d != g / d) s += (g / d) * mobius(c / (g / d));
  }
  return s;
}

cplx gauss_sum_real(int64_t v) {
  if (v <= 0 || v % 2 == 0 || !is_squarefree(v))
    throw std::invalid_argument("gauss_sum_real: v must be odd squarefree positive");
  const double pi = std::acos(-1.0);
  KahanSumC direct;
  for (int64_t a = 0; a < v; ++a) {
    int ch = kronecker_symbol(a, v);  // (0|1) = 1 covers the v = 1 case
    if (ch == 0) continue;
    double ang = 2.0 * pi * double(a) / double(v);
    direct.add(double(ch) * cplx(std::cos(ang), std::sin(ang)));
  }
  cplx closed = (v % 4 == 1) ? cplx(std::sqrt(double(v)), 0.0)
                             : cplx(0.0, std::sqrt(double(v)));
  if (std::abs(direct.value() - closed) > 1e-10)
    throw std::runtime_error("gauss_sum_real: direct sum disagrees with closed form");
  return closed;
}

namespace {

// Local factor prod_{p | gcd(|h|,u)} (1 - p^{-a} - p^{-a-1}), a = v_p(h), times
// mu(u/g) * g/u, as an exact fraction. u is the squarefree channel modulus.
Frac channel_factor(int64_t habs, int64_t u) {
  int64_t g = std::gcd(habs, u);
  Frac f(mobius(u / g), 1);
  f = f * Frac(g, u);
  for (int64_t p : prime_factors(g)) {
    int64_t pa = 1;  // p^a with a = v_p(h)
    int64_t hh = habs;
    while (hh % p == 0) {
      hh /= p;
      pa *= p;
    }
    // (p^{a+1} - p - 1) / p^{a+1}
    f = f * Frac(pa * p - p - 1, pa * p);
  }
  return f;
}

}  // namespace

double sigma_shift(int64_t h, const Factorization& f, double L1) {
  if (h == 0) throw std::invalid_argument("sigma_shift: h must be nonzero");
  int64_t habs = h < 0 ? -h : h;
  Frac channels = channel_factor(habs, f.v) + channel_factor(habs, f.w);
  // sum over divisors of |h| coprime to q: common denominator |h|
  int128 num = 0;
  for (int64_t d = 1; d * d <= habs; ++d) {
    if (habs % d != 0) continue;
    if (std::gcd(d, f.q) == 1) num += habs / d;
    int64_t e = habs / d;
    if (e != d && std::gcd(e, f.q) == 1) num += d;
  }
  Frac divisors(num, habs);
  Frac local(1, 1);
  for (int64_t p : prime_factors(f.q)) local = local * Frac(p * p, p * p - 1);
  const double pi = std::acos(-1.0);
  double zeta2 = pi * pi / 6.0;
  return (channels * divisors * local).to_double() / zeta2 * L1 * L1;
}

namespace {
cplx one_minus_pow(int64_t p, cplx e) {  // 1 - p^{e}
  return 1.0 - std::exp(e * std::log(double(p)));
}
}  // namespace

cplx sigma_zeta(cplx s, const Factorization& f, double L1) {
  if (std::abs(s - cplx(1, 0)) < 1e-12 || std::abs(s) < 1e-12)
    throw std::domain_error("sigma_zeta: s at a pole (s = 0 or s = 1)");
  // Each channel term carries mu(a): the p-local sum of the channel factor
  // (-1/p for p nmid h, 1 - p^{-alpha} - p^{-alpha-1} for p^alpha || h)
  // against sigma_{-1} weights works out to -(1 - p^{1-s})/p per prime p | a.
  // Dropping the sign only looks right when mu(a) = 1; the h-series pins it.
  auto brace_term = [&](int64_t a, int64_t b) {
    cplx t(double(mobius(a)) / double(a), 0.0);
    for (int64_t p : prime_factors(a)) t *= one_minus_pow(p, 1.0 - s);
    for (int64_t p : prime_factors(b)) t *= one_minus_pow(p, -1.0 - s);
    return t;
  };
  cplx brace = brace_term(f.v, f.w) + brace_term(f.w, f.v);
  double local = 1.0;
  for (int64_t p : prime_factors(f.q))
    local *= double(p) * double(p) / (double(p) * double(p) - 1.0);
  const double pi = std::acos(-1.0);
  double zeta2 = pi * pi / 6.0;
  return brace * (local / zeta2) * riemann_zeta(s) * riemann_zeta(s + 1.0) * L1 * L1;
}

double sigma_zeta_residue_at_1(const Factorization& f, double L1) {
  return (f.v == 1 || f.w == 1) ? L1 * L1 : 0.0;
}

double sigma_zeta_residue_at_0(const Factorization& f, double L1) {
  const double pi = std::acos(-1.0);
  FieldParams params(f.q);
  double q_over_nu = double(f.q) / double(params.nu_q);
  // Brace at s = 0: each channel contributes mu(u)^2 phi(q)/q = phi(q)/q, so
  // the residue is channel-independent. zeta(0)/zeta(2) = -3/pi^2.
  return 2.0 * q_over_nu * (-3.0 / (pi * pi)) * L1 * L1;
}

}  // namespace hecke
