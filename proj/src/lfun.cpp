#include "hecke/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace hecke {

namespace {

const double kPi = std::acos(-1.0);

// G(u) = (cos(pi u / A))^{-A}. On the contour Re u = 1 (A >= 4) and at the
// residual arguments s, s-1 the cosine keeps positive real part, so the
// principal logarithm is continuous.
cplx log_G(cplx u, int A) {
  return -double(A) * std::log(std::cos(kPi * u / double(A)));
}

cplx G_fn(cplx u, int A) { return std::exp(log_G(u, A)); }

// Trapezoid weights for V_s on Re u = 1: nodes u_j = 1 + i v_j, v_j = v0 + j*step,
// weight (step/2pi) Gamma(s+u)/Gamma(s) G(u)/u, trimmed at 1e-20 of the peak.
struct VWeights {
  double v0 = 0.0, step = 0.0;
  std::vector<cplx> w;

  // V_s(y) = sum_j w_j y^{-u_j} = y^{-1} sum_j w_j e^{-i v_j log y}.
  // The unit rotation is refreshed from exp() every 128 steps to kill drift.
  cplx eval(double y) const {
    double ly = std::log(y);
    cplx rot = std::exp(cplx(0.0, -step * ly));
    cplx cur = 1.0;
    cplx sum = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (j % 128 == 0) cur = std::exp(cplx(0.0, -(v0 + step * double(j)) * ly));
      sum += w[j] * cur;
      cur *= rot;
    }
    return sum / y;
  }
};

VWeights build_v_weights(cplx s, int A, double step) {
  double half_range = std::abs(s.imag()) + 60.0;
  long J = long(std::ceil(half_range / step));
  cplx lg_s = log_gamma(s);
  std::vector<cplx> full(std::size_t(2 * J + 1));
  double peak = 0.0;
  for (long j = -J; j <= J; ++j) {
    cplx u(1.0, step * double(j));
    // All factors combined in log space first; the ratio of gammas alone can
    // reach e^{+pi |Im s| / 2} before G's decay pulls it back.
    cplx lw = log_gamma(s + u) - lg_s + log_G(u, A);
    cplx val = std::exp(lw) / u * (step / (2.0 * kPi));
    if (j == -J || j == J) val *= 0.5;
    full[std::size_t(j + J)] = val;
    peak = std::max(peak, std::abs(val));
  }
  double thresh = 1e-20 * peak;
  std::size_t lo = 0, hi = full.size() - 1;
  while (lo < hi && std::abs(full[lo]) < thresh) ++lo;
  while (hi > lo && std::abs(full[hi]) < thresh) --hi;
  VWeights out;
  out.step = step;
  out.v0 = step * (double(lo) - double(J));
  out.w.assign(full.begin() + long(lo), full.begin() + long(hi) + 1);
  return out;
}

void validate_strip(cplx s, const char* who) {
  if (!(s.real() > 0.0 && s.real() < 1.0))
    throw std::domain_error(std::string(who) + ": need 0 < Re s < 1");
}

void validate_A(int A, const char* who) {
  if (A < 4 || A % 2 != 0)
    throw std::domain_error(std::string(who) + ": A_test must be even and >= 4");
}

// Certified majorants K N^{-p} for sum_{n>N} tau(n) n^{-Re s0} |V_{s0}(n/Q)|,
// obtained by shifting the V contour to Re u = sigma_c < A/2 (staying left of
// the order-A pole of G) and applying |lambda(n)| <= tau(n) <= 2 sqrt(n):
//   tail <= [(1/2pi) int |Gamma(s0+u)/Gamma(s0)| |G(u)/u| |du|] * Q^{sigma_c}
//           * 2 N^{3/2 - Re s0 - sigma_c} / (Re s0 + sigma_c - 3/2).
// Several sigma_c are returned; the caller minimizes over them per N.
std::vector<std::pair<double, double>> tail_candidates(cplx s0, int A,
                                                       double Q) {
  std::vector<double> sigmas;
  const double top = double(A) / 2.0 - 0.5;
  for (double sc : {2.5, top - 2.0, top - 1.0, top})
    if (sc > 1.0 && sc <= top && (sigmas.empty() || sc > sigmas.back() + 0.01))
      sigmas.push_back(sc);
  std::vector<std::pair<double, double>> out;
  const cplx lg0 = log_gamma(s0);
  for (double sc : sigmas) {
    const double p = s0.real() + sc - 1.5;
    if (p < 0.2) continue;
    const double step = 0.25, range = std::abs(s0.imag()) + 80.0;
    const long J = lround(range / step);
    double acc = 0.0;
    for (long j = -J; j <= J; ++j) {
      const cplx u(sc, step * double(j));
      const double w =
          std::exp((log_gamma(s0 + u) - lg0 + log_G(u, A)).real()) / std::abs(u);
      acc += (j == -J || j == J) ? 0.5 * w : w;
    }
    const double integral = acc * step / (2.0 * kPi) * 1.05;  // coarse-grid slack
    out.emplace_back(integral * std::pow(Q, sc) * 2.0 / p, p);
  }
  if (out.empty()) out.emplace_back(1e300, 0.5);
  return out;
}

}  // namespace

std::vector<double> hecke_coefficients(const ClassGroup& group,
                                       const ClassCharacter& psi,
                                       std::int64_t n_max) {
  if (n_max < 1) throw std::domain_error("hecke_coefficients: n_max must be >= 1");
  if (psi.values.size() != group.forms.size())
    throw std::domain_error("hecke_coefficients: character does not match group");
  const std::int64_t q = group.q;
  std::vector<double> lam(std::size_t(n_max) + 1, 0.0);
  // Imaginary parts cancel between mirror classes (a,b,c) <-> (a,-b,c); the
  // residual is accumulated on a prefix and asserted below.
  const std::int64_t imag_cap = std::min<std::int64_t>(n_max, 2000);
  std::vector<double> lam_im(std::size_t(imag_cap) + 1, 0.0);
  for (std::size_t idx = 0; idx < group.forms.size(); ++idx) {
    const QuadForm& f = group.forms.at(idx);
    const double wre = 0.5 * psi.values[idx].real();
    const double wim = 0.5 * psi.values[idx].imag();
    const std::int64_t ylim =
        std::int64_t(std::sqrt(4.0 * double(f.a) * double(n_max) / double(q))) + 1;
    for (std::int64_t y = -ylim; y <= ylim; ++y) {
      // a x^2 + b x y + c y^2 <= n_max  <=>  (2a x + b y)^2 <= 4 a n_max - q y^2
      const std::int64_t disc = 4 * f.a * n_max - q * y * y;
      if (disc < 0) continue;
      const double sd = std::sqrt(double(disc));
      const double center = -double(f.b) * double(y);
      // Widened by one on both sides against sqrt rounding; n > n_max filtered.
      const std::int64_t x_lo =
          std::int64_t(std::ceil((center - sd) / double(2 * f.a))) - 1;
      const std::int64_t x_hi =
          std::int64_t(std::floor((center + sd) / double(2 * f.a))) + 1;
      for (std::int64_t x = x_lo; x <= x_hi; ++x) {
        const std::int64_t n = f.a * x * x + f.b * x * y + f.c * y * y;
        if (n > n_max) continue;
        lam[std::size_t(n)] += wre;
        if (n <= imag_cap) lam_im[std::size_t(n)] += wim;
      }
    }
  }
  double worst = 0.0;
  for (double v : lam_im) worst = std::max(worst, std::abs(v));
  if (worst > 1e-9)
    throw std::runtime_error("hecke_coefficients: imaginary residual exceeds 1e-9");
  return lam;
}

std::vector<double> inverse_coefficients(const std::vector<double>& lambda) {
  if (lambda.size() < 2 || std::abs(lambda[1] - 1.0) > 1e-9)
    throw std::domain_error("inverse_coefficients: lambda[1] must equal 1");
  const std::int64_t n_max = std::int64_t(lambda.size()) - 1;
  std::vector<double> inv(lambda.size(), 0.0);
  inv[1] = 1.0;
  // Forward propagation of lambda*(m) = -sum_{d|m, d>1} lambda(d) lambda*(m/d):
  // inv[a] is final once every pair (a', d) with a'd = a, a' < a has pushed.
  for (std::int64_t a = 1; a <= n_max; ++a) {
    const double va = inv[std::size_t(a)];
    if (va == 0.0) continue;
    for (std::int64_t d = 2; a * d <= n_max; ++d)
      inv[std::size_t(a * d)] -= lambda[std::size_t(d)] * va;
  }
  return inv;
}

std::vector<std::int32_t> tau_chi_sieve(const FieldParams& params,
                                        std::int64_t n_max) {
  if (n_max < 1) throw std::domain_error("tau_chi_sieve: n_max must be >= 1");
  std::vector<std::int32_t> chi_tab(std::size_t(params.q));
  for (std::int64_t r = 0; r < params.q; ++r)
    chi_tab[std::size_t(r)] = params.chi(r);
  std::vector<std::int32_t> tau(std::size_t(n_max) + 1, 0);
  for (std::int64_t d = 1; d <= n_max; ++d) {
    const std::int32_t cd = chi_tab[std::size_t(d % params.q)];
    if (cd == 0) continue;
    for (std::int64_t m = d; m <= n_max; m += d) tau[std::size_t(m)] += cd;
  }
  return tau;
}

double L_one_chi(const FieldParams& params, double* series_out,
                 double* tail_bound_out) {
  const std::int64_t h = class_number(params.q);
  const double exact = kPi * double(h) / std::sqrt(double(params.q));
  const double qd = double(params.q);
  const std::int64_t M =
      std::max<std::int64_t>(100000, std::int64_t(std::ceil(2.0 * qd * std::sqrt(qd))));
  std::vector<std::int8_t> chi_tab(std::size_t(params.q));
  for (std::int64_t r = 0; r < params.q; ++r)
    chi_tab[std::size_t(r)] = std::int8_t(params.chi(r));
  KahanSum acc;
  std::int64_t r = 0;  // n mod q without division
  for (std::int64_t n = 1; n <= M; ++n) {
    if (++r == params.q) r = 0;
    const int c = chi_tab[std::size_t(r)];
    if (c != 0) acc.add(double(c) / double(n));
  }
  // Abel summation with |sum of chi over any window| <= q/2 gives a dropped
  // tail below q/(2M); q/M keeps a factor-2 margin.
  const double tail = qd / double(M);
  const double series = acc.value();
  if (series_out) *series_out = series;
  if (tail_bound_out) *tail_bound_out = tail;
  if (std::abs(series - exact) > tail + 1e-9)
    throw std::runtime_error("L_one_chi: class-number value and character series disagree");
  return exact;
}

cplx test_function_V(cplx s, double y, int A_test, double step) {
  validate_strip(s, "test_function_V");
  validate_A(A_test, "test_function_V");
  if (!(y > 0.0)) throw std::domain_error("test_function_V: y must be positive");
  if (!(step > 0.0 && step <= 0.5))
    throw std::domain_error("test_function_V: step must lie in (0, 0.5]");
  return build_v_weights(s, A_test, step).eval(y);
}

cplx gamma_factor_X(cplx s, const FieldParams& params) {
  const double Q = std::sqrt(double(params.q)) / (2.0 * kPi);
  return std::exp((1.0 - 2.0 * s) * std::log(Q) + log_gamma(1.0 - s) -
                  log_gamma(s));
}

HeckeLSeries::HeckeLSeries(const ClassGroup& g, const ClassCharacter& character,
                           int A)
    : params(g.q), group(g), psi(character), A_test(A) {
  validate_A(A, "HeckeLSeries");
  if (psi.values.size() != group.forms.size())
    throw std::domain_error("HeckeLSeries: character does not match group");
  Q = std::sqrt(double(params.q)) / (2.0 * kPi);
  L1_chi = kPi * double(group.h) / std::sqrt(double(params.q));
}

void HeckeLSeries::ensure_lambda(std::int64_t n_max) {
  if (std::int64_t(lambda.size()) > n_max) return;
  lambda = hecke_coefficients(group, psi, n_max);
}

void HeckeLSeries::ensure_lambda_star(std::int64_t n_max) {
  if (std::int64_t(lambda_star.size()) > n_max) return;
  ensure_lambda(n_max);
  std::vector<double> prefix(lambda.begin(), lambda.begin() + n_max + 1);
  lambda_star = inverse_coefficients(prefix);
}

EvalResult L_value(HeckeLSeries& series, cplx s, bool estimate_error,
                   double eps_target) {
  validate_strip(s, "L_value");
  if (!(eps_target >= 1e-13))
    throw std::domain_error("L_value: eps_target below the floating-point floor");
  const int A = series.A_test;
  const double Q = series.Q;
  const double smod = std::abs(s);

  const bool critical = std::abs(s.real() - 0.5) < 1e-12;
  const cplx X = gamma_factor_X(s, series.params);

  const auto cand1 = tail_candidates(s, A, Q);
  const auto cand2 = tail_candidates(1.0 - s, A, Q);
  const auto bound_at = [&](std::int64_t n) {
    const auto best = [&](const std::vector<std::pair<double, double>>& cs) {
      double b = 1e300;
      for (const auto& [K, p] : cs) b = std::min(b, K * std::pow(double(n), -p));
      return b;
    };
    return best(cand1) + std::abs(X) * best(cand2);
  };
  const std::int64_t cap = 2000000;
  std::int64_t N =
      std::max<std::int64_t>(16, std::int64_t(std::ceil(Q * (smod + 40.0 * double(A)))));
  while (N < cap && bound_at(N) > eps_target) N = N + N / 4 + 16;
  N = std::min(N, cap);
  series.ensure_lambda(N);

  // On the critical line 1-s = conj(s), so the second sum is the conjugate of
  // the first (same quadrature nodes, conjugated weights): one pass suffices.
  auto sum_pair = [&](double step) {
    VWeights w1 = build_v_weights(s, A, step);
    VWeights w2;
    if (!critical) w2 = build_v_weights(1.0 - s, A, step);
    KahanSumC acc1, acc2;
    for (std::int64_t n = 1; n <= N; ++n) {
      const double lam = series.lambda[std::size_t(n)];
      if (lam == 0.0) continue;
      const double y = double(n) / Q;
      const double ln = std::log(double(n));
      acc1.add(lam * std::exp(-s * ln) * w1.eval(y));
      if (!critical) acc2.add(lam * std::exp((s - 1.0) * ln) * w2.eval(y));
    }
    const cplx S1 = acc1.value();
    return std::make_pair(S1, critical ? std::conj(S1) : acc2.value());
  };

  auto [S1, S2] = sum_pair(0.05);
  cplx value = S1 + X * S2;
  if (series.trivial_psi()) {
    // Both polar corrections: residues of G(u)/u Lambda(s+u) at u = 1-s and
    // u = -s. The pair is forced by Lambda(s) = Lambda(1-s); the first alone
    // would give the pole at s = 1 the wrong sign.
    const cplx corr = std::exp((1.0 - s) * std::log(Q) - log_gamma(s)) *
                      series.L1_chi *
                      (G_fn(s - 1.0, A) / (s - 1.0) - G_fn(s, A) / s);
    value += corr;
  }

  EvalResult out;
  out.value = value;
  out.truncation_N = N;
  out.est_error = bound_at(N) + 1e-12 * (1.0 + std::abs(value));
  if (estimate_error) {
    auto [T1, T2] = sum_pair(0.025);
    out.est_error += std::abs((T1 + X * T2) - (S1 + X * S2));
  }
  return out;
}

cplx completed_lambda(HeckeLSeries& series, cplx s) {
  const cplx L = L_value(series, s, false).value;
  return std::exp(s * std::log(series.Q) + log_gamma(s)) * L;
}

double hardy_Z(HeckeLSeries& series, double t, double eps_target) {
  const cplx s(0.5, t);
  const cplx L = L_value(series, s, false, eps_target).value;
  const double theta = t * std::log(series.Q) + log_gamma(s).imag();
  const cplx z = std::exp(cplx(0.0, theta)) * L;
  if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z)))
    throw std::runtime_error("hardy_Z: imaginary residual too large");
  return z.real();
}

MollifierSums mollifier_sums(HeckeLSeries& series, cplx s) {
  if (series.params.q > 60)
    throw std::domain_error("mollifier_sums: q > 60 would need an oversized cache");
  const std::int64_t q = series.params.q;
  const std::int64_t cutoff = q * q * q * q;
  series.ensure_lambda_star(cutoff);
  KahanSumC n_acc, m_acc;
  for (std::int64_t n = 1; n <= cutoff; ++n) {
    const double ln = std::log(double(n));
    const double lam = series.lambda[std::size_t(n)];
    if (lam != 0.0) n_acc.add(lam * std::exp(-s * ln));
    const double ls = series.lambda_star[std::size_t(n)];
    if (ls != 0.0) m_acc.add(ls * std::exp(-s * ln));
  }
  MollifierSums out;
  out.N_value = n_acc.value();
  out.M_value = m_acc.value();
  out.B_value = out.M_value * out.N_value - 1.0;
  out.cutoff = cutoff;
  return out;
}

RankinResult rankin_selberg_check(const FieldParams& params, cplx s,
                                  std::int64_t N) {
  if (!(s.real() > 1.0))
    throw std::domain_error("rankin_selberg_check: need Re s > 1");
  if (N < 100) throw std::domain_error("rankin_selberg_check: N too small");

  const auto tau = tau_chi_sieve(params, N);
  KahanSumC acc;
  for (std::int64_t n = 1; n <= N; ++n) {
    const double t2 = double(tau[std::size_t(n)]) * double(tau[std::size_t(n)]);
    if (t2 != 0.0) acc.add(t2 * std::exp(-s * std::log(double(n))));
  }

  const auto closed = [&params](cplx z) {
    cplx val = riemann_zeta(z) * riemann_zeta(z);
    const cplx lz = dirichlet_l(z, params.q);
    val *= lz * lz / riemann_zeta(2.0 * z);
    for (std::int64_t p : prime_factors(params.q))
      val /= 1.0 + std::exp(-z * std::log(double(p)));
    return val;
  };

  // Certified tail: sum_{n>N} tau(n,chi)^2 n^{-sigma} <= N^{-delta} * S(sigma-delta)
  // where S is either the unconditional zeta^4/zeta(2.) majorant (tau(n,chi)^2
  // <= tau(n)^2) or the exact Rankin-Selberg value; take the best delta.
  const double sigma = s.real();
  double tail = std::numeric_limits<double>::infinity();
  for (double delta : {0.25, 0.5, 0.6, 0.7, 0.75, 0.8, 0.9}) {
    const double sp = sigma - delta;
    if (sp <= 1.02) continue;
    const double z1 = riemann_zeta(cplx(sp, 0.0)).real();
    const double unconditional =
        z1 * z1 * z1 * z1 / riemann_zeta(cplx(2.0 * sp, 0.0)).real();
    const double rankin = closed(cplx(sp, 0.0)).real();
    tail = std::min(tail, std::pow(double(N), -delta) *
                              std::min(unconditional, rankin));
  }

  // (s-1)^2 R_K(s) = alpha + beta (s-1) + O((s-1)^2); Richardson in the step
  // removes the beta term.
  const auto polar = [&closed](double eps) {
    return (cplx(eps * eps, 0.0) * closed(cplx(1.0 + eps, 0.0))).real();
  };
  const double eps = 1e-3;
  const double alpha_hat = 2.0 * polar(eps / 2.0) - polar(eps);
  const double L1 = kPi * double(class_number(params.q)) / std::sqrt(double(params.q));
  const double zeta2 = kPi * kPi / 6.0;
  const double alpha_closed =
      double(params.q) / double(params.nu_q) * L1 * L1 / zeta2;

  RankinResult out;
  out.series = acc.value();
  out.closed_form = closed(s);
  out.tail_bound = tail;
  out.alpha_hat = alpha_hat;
  out.alpha_closed = alpha_closed;
  out.N = N;
  return out;
}

}  // namespace hecke
