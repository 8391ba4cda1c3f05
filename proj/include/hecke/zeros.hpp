#pragma once
// Critical-line zero isolation via Hardy-function sign changes, nearest-gap
// statistics, the small-gap counting statistic, X/L difference-quotient
// checks, pair correlation, and the conditional well-spaced-points report.
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hecke/lfun.hpp"

namespace hecke {

struct ZeroSet {
  std::int64_t q = 0;
  std::size_t char_index = 0;
  double t_min = 0.0, t_max = 0.0;
  double resolution = 1e-9;
  std::vector<double> zeros;  // strictly increasing ordinates
  // Count-check deficits that survived refinement (possible close pairs or
  // off-line zeros); warnings, never errors.
  std::vector<std::array<double, 2>> deficit_intervals;
  std::vector<std::string> warnings;
};

struct ScanOptions {
  double resolution = 1e-9;    // bisection tolerance on ordinates
  double eps_target = 1e-7;    // evaluation accuracy for sign decisions
  int refine_factor = 8;       // grid refinement where the count check fails
  int jobs = 1;                // worker threads over deterministic panels
  // 0 derives the step from t_max; a caller resuming a partial sweep pins the
  // step of the full request so panel boundaries stay aligned.
  double grid_step = 0.0;
};

// Sign-change scan of hardy_Z on [t_min, t_max], grid step (pi/log(Q t_max))/8
// (one eighth of the mean zero spacing), panels refined where the counting
// formula N(T) = (T/pi)(log(Q T) - 1) detects a deficit. Deterministic for
// every jobs value: panel boundaries and per-panel results are fixed, workers
// only change scheduling. t_min = t_max yields an empty set.
ZeroSet scan_zeros(const HeckeLSeries& series, double t_min, double t_max,
                   const ScanOptions& opts = {});

// Expected zero count on [0, T].
double zero_count_formula(std::int64_t q, double T);

struct GapRecord {
  double gamma = 0.0;
  double gamma_prime = 0.0;   // nearest other zero (ties toward the smaller)
  double normalized_gap = 0.0;  // |gamma - gamma_prime| log(gamma) / pi
};

std::vector<GapRecord> nearest_gaps(const ZeroSet& zs);

// #{gamma in [2, T] : |gamma - gamma'| <= pi (1 - alpha) / log gamma}; the
// companion gamma' is the nearest zero in the full scanned set.
std::int64_t D_statistic(const ZeroSet& zs, double alpha, double T);

struct QuotientChecks {
  cplx ell;           // (L(s) - L(s')) / (s - s'), or L'(s) when s = s'
  cplx x;             // (X(s) - X(s')) / (s - s'), analytic X' when s = s'
  cplx x_asymptotic;  // -2 (e/tQ)^{it} (e/t'Q)^{it'} sin((t-t') log tQ)/(t-t')
  double defect;      // | |x| - 2|sin((t-t') log tQ)/(t-t')| |, an O(1/t) term
  // |x| - 2 alpha log(tQ) for the largest alpha with |t-t'| log tQ <= pi(1-alpha);
  // expected > -O(1/t) when applicable, NaN otherwise.
  double sine_bound_margin;
};

// Difference quotients on the critical line (Im s, Im s' >= 1). s = s' gives
// derivatives: analytic for X, Richardson central difference for L.
QuotientChecks quotient_checks(HeckeLSeries& series, cplx s, cplx s_prime);

struct PairCorrelation {
  double bin_width = 0.0;
  double max_u = 5.0;
  std::vector<double> centers;
  std::vector<std::int64_t> counts;     // pairs with normalized diff in bin
  std::vector<double> empirical;        // counts / (#zeros * bin_width)
  std::vector<double> pcc;              // 1 - (sin pi u / pi u)^2 at centers
};

// Histogram of (gamma_m - gamma_n) log(t_max) / 2 pi over ordered pairs.
PairCorrelation pair_correlation(const ZeroSet& zs, double bin_width);

struct HypothesisReport {
  double A = 0.0, T = 0.0, alpha = 0.0, c = 1.0;
  std::int64_t R_selected = 0;
  double threshold = 0.0;     // c T / (alpha (log q)^A)
  bool verdict = false;       // R_selected >= threshold
  double implied_bound = 0.0; // (log T)^{-2} (log q)^{-2A-6}
  bool ell_verified = false;  // difference quotients checked numerically
  double max_abs_ell = 0.0;   // largest |ell| over selected pairs when verified
  std::vector<double> selected;  // chosen ordinates (ascending)
  std::string disclaimer;        // always set
};

// Greedy (leftmost-first) selection of zeros in (T, min(2T, t_max)] that have
// a companion within pi(1-alpha)/log t and pairwise spacing >= 1; compares
// R_selected against c T / (alpha (log q)^A). When verify_with is non-null the
// difference quotient of each selected pair is evaluated and must stay below
// (log q)^{7/2}. The verdict is a desk-scale illustration, never a proof; the
// disclaimer field says so on every report.
HypothesisReport hypothesis_report(const ZeroSet& zs, double A, double alpha,
                                   double T, double c = 1.0,
                                   HeckeLSeries* verify_with = nullptr);

}  // namespace hecke
