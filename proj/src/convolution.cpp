#include "hecke/convolution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

#include "hecke/numerics.hpp"

namespace hecke {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

// Gauss-sum sign epsilon_m for odd positive m: 1 when m = 1 (mod 4), i when
// m = 3 (mod 4).
cplx eps4(std::int64_t m) {
  return (m % 4 == 1) ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t c) {
  if (c == 1) return 0;
  std::int64_t r0 = c, r1 = ((a % c) + c) % c, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t k = r0 / r1;
    r0 -= k * r1;
    std::swap(r0, r1);
    s0 -= k * s1;
    std::swap(s0, s1);
  }
  if (r0 != 1) throw std::domain_error("mod_inverse: arguments not coprime");
  return ((s0 % c) + c) % c;
}

// integral g(x) J0(beta sqrt(x)) dx. Substituting u = sqrt(x) makes the
// oscillation phase exactly linear in u, so half-period panels with 12-point
// Gauss-Legendre are spectrally accurate at any beta.
double osc_bessel_integral(const BumpFunction& g, double beta) {
  static const double gx[6] = {0.1252334085114689, 0.3678314989981802,
                               0.5873179542866175, 0.7699026741943047,
                               0.9041172563704749, 0.9815606342467192};
  static const double gw[6] = {0.2491470458134028, 0.2334925365383548,
                               0.2031674267230659, 0.1600783285433462,
                               0.1069393259953184, 0.0471753363865118};
  const double ua = std::sqrt(g.X), ub = std::sqrt(2.0 * g.X);
  const int panels =
      int(std::ceil((ub - ua) * std::max(beta, 1.0) / kPi)) + 4;
  const double hw = (ub - ua) / (2.0 * double(panels));
  KahanSum acc;
  for (int p = 0; p < panels; ++p) {
    const double mid = ua + (2.0 * double(p) + 1.0) * hw;
    for (int k = 0; k < 6; ++k)
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        const double u = mid + double(sgn) * hw * gx[k];
        acc.add(gw[k] * hw * 2.0 * u * g.value(u * u) *
                bessel_j0(beta * u));
      }
  }
  return acc.value();
}

void validate_bump_pair(const BumpFunction& g1, const BumpFunction& g2,
                        std::int64_t h) {
  if (h < 1 || h > 1000000)
    throw std::domain_error("shifted convolution: h out of [1, 1e6]");
  if (g1.X > 1e6 || g2.X > 1e6)
    throw std::domain_error("shifted convolution: support exceeds 1e6");
}

// Shared diagonal loop: sum lambda(n+h) lambda(n) g1(n+h) g2(n) with the
// coefficient values supplied by lam (real in every channel).
template <typename Lam>
double brute_core(Lam&& lam, std::int64_t h, const BumpFunction& g1,
                  const BumpFunction& g2) {
  const std::int64_t n_lo = std::max<std::int64_t>(
      std::int64_t(std::ceil(g2.X)),
      std::int64_t(std::ceil(g1.X - double(h))));
  const std::int64_t n_hi = std::min<std::int64_t>(
      std::int64_t(std::floor(2.0 * g2.X)),
      std::int64_t(std::floor(2.0 * g1.X - double(h))));
  KahanSum acc;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    if (n < 1) continue;
    const double w = g1.value(double(n + h)) * g2.value(double(n));
    if (w != 0.0) acc.add(lam(n + h) * lam(n) * w);
  }
  return acc.value();
}

ExponentFit fit_rows(std::vector<ExperimentRow> rows) {
  ExponentFit fit;
  fit.rows = std::move(rows);
  std::vector<double> xs, ys;
  for (const auto& r : fit.rows)
    if (r.abs_error > 1e-9) {
      xs.push_back(std::log(r.X));
      ys.push_back(std::log(r.abs_error));
    }
  if (xs.size() < 2) {
    fit.error_floor = true;
    fit.gate = true;  // errors at the noise floor beat any power gate
    return fit;
  }
  const double n = double(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.gate = fit.slope <= 0.85;
  return fit;
}

void validate_sweep(const std::vector<double>& X_list) {
  if (X_list.size() < 3)
    throw std::domain_error("exponent_experiment: need >= 3 sweep points");
  for (std::size_t i = 0; i < X_list.size(); ++i) {
    if (X_list[i] < 0.5 || X_list[i] > 1e6)
      throw std::domain_error("exponent_experiment: X out of [0.5, 1e6]");
    if (i > 0 && X_list[i] <= X_list[i - 1])
      throw std::domain_error("exponent_experiment: sweep must ascend");
  }
}

// Rows are independent and land in a fixed slot each, so the fit is
// identical for every jobs value.
template <typename RowFn>
std::vector<ExperimentRow> sweep_rows(const std::vector<double>& X_list,
                                      int jobs, RowFn&& row_fn) {
  std::vector<ExperimentRow> rows(X_list.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < X_list.size(); ++i) rows[i] = row_fn(X_list[i]);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  const auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= X_list.size()) break;
      rows[i] = row_fn(X_list[i]);
    }
  };
  std::vector<std::thread> threads;
  const std::size_t n =
      std::min<std::size_t>(std::size_t(jobs), X_list.size());
  threads.reserve(n);
  for (std::size_t i = 0; i < n; ++i) threads.emplace_back(work);
  for (auto& th : threads) th.join();
  return rows;
}

}  // namespace

double BumpFunction::value(double x) const { return derivative(x, 0); }

double BumpFunction::derivative(double x, int nu) const {
  if (nu < 0 || nu > 2)
    throw std::domain_error("BumpFunction: derivative order out of [0, 2]");
  const double u = x / X - 1.0;
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double d = u * (1.0 - u);
  const double phi = -1.0 / d;
  // exp underflows well before the rational prefactors overflow.
  if (phi < -700.0) return 0.0;
  const double e = kappa * std::exp(phi);
  if (nu == 0) return e;
  const double dphi = (1.0 - 2.0 * u) / (d * d);
  if (nu == 1) return e * dphi / X;
  const double d2phi =
      -2.0 / (d * d) - 2.0 * (1.0 - 2.0 * u) * (1.0 - 2.0 * u) / (d * d * d);
  return e * (dphi * dphi + d2phi) / (X * X);
}

BumpFunction make_bump(double X) {
  if (!(X >= 0.5)) throw std::domain_error("make_bump: X < 1/2");
  BumpFunction g{X, 1.0};
  const auto grid_max = [&]() {
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double x = X * (1.0 + (double(i) + 0.5) / 10000.0);
      for (int nu = 0; nu <= 2; ++nu)
        worst = std::max(worst,
                         std::pow(x, nu) * std::abs(g.derivative(x, nu)));
    }
    return worst;
  };
  const double m = grid_max();
  if (m > 1.0) {
    g.kappa /= 1.02 * m;
    if (grid_max() > 1.0)
      throw std::runtime_error("make_bump: normalization failed after retry");
  }
  return g;
}

double bump_integral(const BumpFunction& g) {
  return adaptive_simpson([&](double x) { return g.value(x); }, g.X, 2.0 * g.X,
                          1e-12 * g.X + 1e-15);
}

double overlap_integral(const BumpFunction& g1, const BumpFunction& g2,
                        std::int64_t h) {
  const double lo = std::max(g2.X, g1.X - double(h));
  const double hi = std::min(2.0 * g2.X, 2.0 * g1.X - double(h));
  if (hi <= lo) return 0.0;
  return adaptive_simpson(
      [&](double x) { return g1.value(x + double(h)) * g2.value(x); }, lo, hi,
      1e-11 * (hi - lo) + 1e-15);
}

std::vector<std::int64_t> twisted_divisor_sieve(const Factorization& f,
                                                std::int64_t n_max) {
  if (n_max < 1 || n_max > 3000000)
    throw std::domain_error("twisted_divisor_sieve: n_max out of [1, 3e6]");
  std::vector<std::int64_t> vals(std::size_t(n_max) + 1, 0);
  std::vector<signed char> kw(std::size_t(n_max) + 1, 0);
  for (std::int64_t e = 1; e <= n_max; ++e)
    kw[std::size_t(e)] = (signed char)(kronecker_symbol(e, f.w));
  for (std::int64_t d = 1; d <= n_max; ++d) {
    const int cv = kronecker_symbol(d, f.v);
    if (cv == 0) continue;
    for (std::int64_t m = d, e = 1; m <= n_max; m += d, ++e)
      vals[std::size_t(m)] += cv * kw[std::size_t(e)];
  }
  return vals;
}

double shifted_convolution_brute(HeckeLSeries& series, std::int64_t h,
                                 const BumpFunction& g1,
                                 const BumpFunction& g2) {
  validate_bump_pair(g1, g2, h);
  const std::int64_t top =
      std::int64_t(std::floor(2.0 * std::max(g1.X, g2.X))) + h + 1;
  series.ensure_lambda(top);
  return brute_core([&](std::int64_t n) { return series.lambda[std::size_t(n)]; },
                    h, g1, g2);
}

double shifted_convolution_brute(const Factorization& f, std::int64_t h,
                                 const BumpFunction& g1,
                                 const BumpFunction& g2) {
  validate_bump_pair(g1, g2, h);
  const std::int64_t top =
      std::int64_t(std::floor(2.0 * std::max(g1.X, g2.X))) + h + 1;
  const auto tau = twisted_divisor_sieve(f, top);
  return brute_core([&](std::int64_t n) { return double(tau[std::size_t(n)]); },
                    h, g1, g2);
}

double shifted_convolution_main(std::int64_t h, const Factorization& f,
                                const BumpFunction& g1, const BumpFunction& g2,
                                double L1) {
  validate_bump_pair(g1, g2, h);
  return sigma_shift(h, f, L1) * overlap_integral(g1, g2, h);
}

ExponentFit exponent_experiment(const Factorization& f, std::int64_t h,
                                const std::vector<double>& X_list, double L1,
                                int jobs) {
  validate_sweep(X_list);
  return fit_rows(sweep_rows(X_list, jobs, [&](double X) {
    const BumpFunction g = make_bump(X);
    ExperimentRow r;
    r.X = X;
    r.B = shifted_convolution_brute(f, h, g, g);
    r.main = shifted_convolution_main(h, f, g, g, L1);
    r.abs_error = std::abs(r.B - r.main);
    return r;
  }));
}

ExponentFit exponent_experiment(HeckeLSeries& series, std::int64_t h,
                                const std::vector<double>& X_list, int jobs) {
  validate_sweep(X_list);
  // Real psi means the coefficients live in the Eisenstein channel and carry
  // the sigma(h) main term; non-real psi is the cusp channel with none.
  const Factorization* fac = nullptr;
  Factorization trivial_fac(series.params, 1);
  if (series.psi.index == 0)
    fac = &trivial_fac;
  else if (series.psi.is_real && series.psi.genus)
    fac = &*series.psi.genus;
  // Grow the coefficient cache up front: the parallel rows then only read it.
  series.ensure_lambda(
      std::int64_t(std::floor(2.0 * X_list.back())) + h + 1);
  return fit_rows(sweep_rows(X_list, jobs, [&](double X) {
    const BumpFunction g = make_bump(X);
    ExperimentRow r;
    r.X = X;
    r.B = shifted_convolution_brute(series, h, g, g);
    r.main = (fac != nullptr)
                 ? shifted_convolution_main(h, *fac, g, g, series.L1_chi)
                 : 0.0;
    r.abs_error = std::abs(r.B - r.main);
    return r;
  }));
}

ExponentFit exponent_experiment_control(std::int64_t h,
                                        const std::vector<double>& X_list,
                                        int jobs) {
  validate_sweep(X_list);
  return fit_rows(sweep_rows(X_list, jobs, [&](double X) {
    const BumpFunction g = make_bump(X);
    ExperimentRow r;
    r.X = X;
    r.B = brute_core([](std::int64_t) { return 1.0; }, h, g, g);
    r.main = 0.0;
    r.abs_error = std::abs(r.B);
    return r;
  }));
}

VoronoiResult voronoi_verify(const Factorization& f, std::int64_t c,
                             std::int64_t a, const BumpFunction& g,
                             double dual_threshold) {
  if (c < 1 || c > 20)
    throw std::domain_error("voronoi_verify: c out of [1, 20]");
  if (std::gcd(((a % c) + c) % c, c) != 1 && c != 1)
    throw std::domain_error("voronoi_verify: gcd(a, c) != 1");
  if (!(dual_threshold >= 1e-14 && dual_threshold <= 1e-6))
    throw std::domain_error("voronoi_verify: threshold out of [1e-14, 1e-6]");
  const FieldParams params(f.q);
  const double L1 = L_one_chi(params);

  VoronoiResult res;

  // n-sum side: the support makes the sum finite.
  std::vector<cplx> roots(std::size_t(c), cplx(0.0, 0.0));
  for (std::int64_t k = 0; k < c; ++k)
    roots[std::size_t(k)] = std::exp(cplx(0.0, kTwoPi * double(k) / double(c)));
  const std::int64_t n_hi = std::int64_t(std::floor(2.0 * g.X));
  KahanSumC lhs;
  if (n_hi >= 1) {
    const auto tau = twisted_divisor_sieve(f, n_hi);
    const std::int64_t a_mod = ((a % c) + c) % c;
    for (std::int64_t n = std::max<std::int64_t>(1, std::int64_t(std::ceil(g.X)));
         n <= n_hi; ++n) {
      const double gv = g.value(double(n));
      if (gv == 0.0) continue;
      lhs.add(double(tau[std::size_t(n)]) * gv *
              roots[std::size_t((a_mod * (n % c)) % c)]);
    }
  }
  res.lhs = lhs.value();

  // Gauss-sum leading term; the Jacobi symbols vanish exactly when the
  // structural condition (v|c with (c,w)=1, or w|c with (c,v)=1) fails.
  const double g_int = bump_integral(g);
  cplx lead = 0.0;
  if (c % f.v == 0)
    lead += double(kronecker_symbol(a, f.v)) *
            double(kronecker_symbol(c / f.v, f.w)) * gauss_sum_real(f.v);
  if (c % f.w == 0)
    lead += double(kronecker_symbol(a, f.w)) *
            double(kronecker_symbol(c / f.w, f.v)) * gauss_sum_real(f.w);
  res.leading = lead * (L1 / double(c)) * g_int;

  // Reflected factorization and sign constant for the dual side.
  const std::int64_t s = std::gcd(c, f.q);
  const std::int64_t r = f.q / s;
  const std::int64_t cv = std::gcd(c, f.v);
  const std::int64_t cw = std::gcd(c, f.w);
  const std::int64_t v_star = cv * (f.w / cw);
  const Factorization f_star(params, v_star);
  const cplx sigma = eps4(f.v) * eps4(f.v * s) *
                     double(kronecker_symbol(a * (f.v / cv), s)) *
                     double(kronecker_symbol(c / cv, r)) *
                     double(kronecker_symbol(-1, std::gcd(r, f.v)));

  // The dual twist is e(-(ar)^{-1} n / c): the inverse of the product a r,
  // not abar * r. The two agree exactly when r^2 = 1 (mod c), which holds for
  // every c <= 4, so only wider moduli distinguish them.
  const std::int64_t ar_bar = mod_inverse(a * (r % c), c);
  const std::int64_t phase_base = (c == 1) ? 0 : ((c - ar_bar) % c);
  const double beta_base = 4.0 * kPi / (double(c) * std::sqrt(double(r)));

  std::vector<std::int64_t> tau_star = twisted_divisor_sieve(f_star, 1024);
  KahanSumC dual_sum;
  int consecutive_small = 0;
  const std::int64_t n_cap = 50000;
  std::int64_t n = 0;
  while (++n <= n_cap) {
    if (n >= std::int64_t(tau_star.size()))
      tau_star = twisted_divisor_sieve(f_star, 2 * (std::int64_t(tau_star.size()) - 1));
    const double integral =
        osc_bessel_integral(g, beta_base * std::sqrt(double(n)));
    dual_sum.add(double(tau_star[std::size_t(n)]) *
                 roots[std::size_t((phase_base * (n % c)) % c)] * integral);
    if (std::abs(integral) < dual_threshold) {
      if (++consecutive_small >= 8) break;
    } else {
      consecutive_small = 0;
    }
  }
  res.dual_terms = std::min(n, n_cap);
  res.tail_converged = n <= n_cap;
  res.dual = (kTwoPi * sigma / (double(c) * std::sqrt(double(r)))) *
             dual_sum.value();
  res.rhs = res.leading + res.dual;
  res.residual = std::abs(res.lhs - res.rhs);
  const double flipped = std::abs(res.lhs - (res.leading - res.dual));
  if (res.residual > 1e-9 && flipped < 1e-3 * res.residual)
    res.sign_flip_suspected = true;
  return res;
}

}  // namespace hecke
