#include "hecke/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace hecke {

namespace {

int64_t isqrt_floor(int64_t n) {
  if (n < 0) return -1;
  int64_t r = int64_t(std::sqrt(double(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void validate_form(const QuadForm& f, int64_t q) {
  if (f.a <= 0) throw std::domain_error("form: leading coefficient must be positive");
  if (f.b * f.b - 4 * f.a * f.c != -q)
    throw std::domain_error("form: discriminant mismatch");
  if (std::gcd(std::gcd(f.a, f.b), f.c) != 1)
    throw std::domain_error("form: not primitive");
}

// Bring b into (-a, a] and recompute c from the discriminant.
void normalize(QuadForm& f, int64_t q) {
  int64_t two_a = 2 * f.a;
  int64_t r = f.b % two_a;
  if (r < 0) r += two_a;
  if (r > f.a) r -= two_a;
  f.b = r;
  f.c = (f.b * f.b + q) / (4 * f.a);
}

int64_t ext_gcd(int64_t a, int64_t b, int64_t& x, int64_t& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return a >= 0 ? a : -a;
  }
  int64_t x1, y1;
  int64_t g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

int64_t mod_pos(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

QuadForm reduce_form(QuadForm f, int64_t q) {
  validate_form(f, q);
  normalize(f, q);
  while (f.a > f.c || (f.a == f.c && f.b < 0)) {
    f = {f.c, -f.b, f.a};
    normalize(f, q);
  }
  return f;
}

QuadForm compose_forms(const QuadForm& g1, const QuadForm& g2, int64_t q) {
  validate_form(g1, q);
  validate_form(g2, q);
  QuadForm f1 = g1, f2 = g2;
  if (f1.a > f2.a) std::swap(f1, f2);
  int64_t s = (f1.b + f2.b) / 2;  // b odd for q = 3 (mod 4), so the sum is even
  int64_t n = f2.b - s;
  int64_t y1, d;
  if (f2.a % f1.a == 0) {
    y1 = 0;
    d = f1.a;
  } else {
    int64_t u, v;
    d = ext_gcd(f2.a, f1.a, u, v);
    y1 = u;
  }
  int64_t x2, y2, d1;
  if (s % d == 0) {
    x2 = 0;
    y2 = -1;
    d1 = d;
  } else {
    int64_t u, v;
    d1 = ext_gcd(s, d, u, v);
    x2 = u;
    y2 = -v;
  }
  int64_t v1 = f1.a / d1, v2 = f2.a / d1;
  int64_t r = mod_pos(y1 * y2 * n - x2 * f2.c, v1);
  QuadForm f3;
  f3.a = v1 * v2;
  f3.b = f2.b + 2 * v2 * r;
  f3.c = (f2.c * d1 + r * (f2.b + v2 * r)) / v1;
  return reduce_form(f3, q);
}

int64_t representation_count(const QuadForm& f, int64_t n) {
  if (n < 0) throw std::invalid_argument("representation_count: n must be >= 0");
  if (n == 0) return 1;
  int64_t q = 4 * f.a * f.c - f.b * f.b;
  int64_t count = 0;
  int64_t ymax = isqrt_floor(4 * f.a * n / q);
  for (int64_t y = -ymax; y <= ymax; ++y) {
    // a x^2 + b x y + (c y^2 - n) = 0: discriminant 4an - q y^2
    int64_t disc = 4 * f.a * n - q * y * y;
    if (disc < 0) continue;
    int64_t sd = isqrt_floor(disc);
    if (sd * sd != disc) continue;
    for (int sign : {1, -1}) {
      int64_t num = -f.b * y + sign * sd;
      if (mod_pos(num, 2 * f.a) == 0) ++count;
      if (sd == 0) break;  // count the double root once
    }
  }
  return count;
}

ClassGroup enumerate_class_group(const FieldParams& params) {
  const int64_t q = params.q;
  ClassGroup g;
  g.q = q;
  for (int64_t a = 1; a * a * 3 <= q; ++a) {
    for (int64_t b = -a + 1; b <= a; b += 1) {
      if (mod_pos(b, 2) == 0) continue;  // b odd since -q = 1 (mod 4) discriminants
      int64_t t = b * b + q;
      if (t % (4 * a) != 0) continue;
      int64_t c = t / (4 * a);
      if (c < a) continue;
      if (b < 0 && (c == a)) continue;  // boundary ties keep b > 0
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      g.forms.push_back({a, b, c});
    }
  }
  std::sort(g.forms.begin(), g.forms.end());
  g.h = int64_t(g.forms.size());
  if (g.forms.empty() || g.forms.front().a != 1)
    throw std::logic_error("enumerate_class_group: principal form missing");

  // Composition table for exhaustive structure work when the group is small.
  const int h = int(g.h);
  if (h <= 1024) {
    g.mult_.assign(size_t(h) * h, -1);
    for (int i = 0; i < h; ++i)
      for (int j = i; j < h; ++j) {
        int k = g.index_of(compose_forms(g.forms[i], g.forms[j], q));
        if (k < 0) throw std::logic_error("enumerate_class_group: composition left the set");
        g.mult_[size_t(i) * h + j] = k;
        g.mult_[size_t(j) * h + i] = k;
      }
  }

  // Cyclic decomposition by greedy quotient-order search. Invariant: after each
  // step the generated set S is enumerated with a digit vector per element, the
  // recorded generator has exact order n_k in G/<previous>, and the corrected
  // generator satisfies g^{n_k} = identity, so S is a direct sum throughout.
  const int id = 0;
  std::vector<std::vector<int64_t>> dlog(h);
  std::vector<char> in_s(h, 0);
  std::vector<int> members{id};
  in_s[id] = 1;
  auto quotient_order = [&](int x) {
    int y = x;
    int64_t k = 1;
    while (!in_s[y]) {
      y = g.compose(y, x);
      ++k;
    }
    return std::pair<int64_t, int>(k, y);  // (order, x^k which lies in S)
  };
  auto power = [&](int x, int64_t e) {
    int acc = id;
    for (int64_t i = 0; i < e; ++i) acc = g.compose(acc, x);
    return acc;
  };
  while (int64_t(members.size()) < g.h) {
    int best = -1;
    int64_t best_ord = 0;
    for (int x = 0; x < h; ++x) {
      if (in_s[x]) continue;
      auto [k, land] = quotient_order(x);
      (void)land;
      if (k > best_ord) {
        best_ord = k;
        best = x;
      }
    }
    auto [nk, landing] = quotient_order(best);
    // Correct best so its nk-th power is the identity: solve c_i nk = -m_i (mod n_i).
    int corrected = best;
    const std::vector<int64_t>& m = dlog[landing];
    for (size_t i = 0; i < g.generators.size(); ++i) {
      int64_t ni = g.generators[i].second;
      if (m[i] == 0) continue;
      if (m[i] % nk != 0)
        throw std::logic_error("class group decomposition: non-integral correction");
      int64_t ci = mod_pos(-(m[i] / nk), ni / nk);
      corrected = g.compose(corrected, power(g.generators[i].first, ci));
    }
    if (power(corrected, nk) != id)
      throw std::logic_error("class group decomposition: correction failed");
    size_t gen_idx = g.generators.size();
    g.generators.emplace_back(corrected, nk);
    for (int x : members) dlog[x].push_back(0);
    std::vector<int> extended = members;
    int gp = id;
    for (int64_t j = 1; j < nk; ++j) {
      gp = g.compose(gp, corrected);
      for (int x : members) {
        int y = g.compose(x, gp);
        if (in_s[y]) throw std::logic_error("class group decomposition: collision");
        in_s[y] = 1;
        dlog[y] = dlog[x];
        dlog[y][gen_idx] = j;
        extended.push_back(y);
      }
    }
    members.swap(extended);
  }
  g.dlog = std::move(dlog);

  // Exhaustive homomorphism check for small groups; sampled otherwise.
  auto check_pair = [&](int i, int j) {
    int k = g.compose(i, j);
    for (size_t t = 0; t < g.generators.size(); ++t) {
      int64_t ni = g.generators[t].second;
      if (mod_pos(g.dlog[i][t] + g.dlog[j][t], ni) != g.dlog[k][t])
        throw std::logic_error("class group decomposition: dlog not a homomorphism");
    }
  };
  if (h <= 256) {
    for (int i = 0; i < h; ++i)
      for (int j = i; j < h; ++j) check_pair(i, j);
  } else {
    for (int i = 0; i < h; i += 7)
      for (int j = i; j < h; j += 11) check_pair(i, j);
  }
  return g;
}

int ClassGroup::index_of(const QuadForm& f) const {
  auto it = std::lower_bound(forms.begin(), forms.end(), f);
  if (it == forms.end() || !(*it == f)) return -1;
  return int(it - forms.begin());
}

int ClassGroup::compose(int i, int j) const {
  if (!mult_.empty()) return mult_[size_t(i) * size_t(h) + size_t(j)];
  return index_of(compose_forms(forms[i], forms[j], q));
}

int64_t class_number(int64_t q) {
  FieldParams params(q);  // validates q
  int64_t count = 0;
  for (int64_t a = 1; a * a * 3 <= q; ++a) {
    for (int64_t b = -a + 1; b <= a; ++b) {
      if (mod_pos(b, 2) == 0) continue;
      int64_t t = b * b + q;
      if (t % (4 * a) != 0) continue;
      int64_t c = t / (4 * a);
      if (c < a) continue;
      if (b < 0 && c == a) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      ++count;
    }
  }
  return count;
}

namespace {

// Genus value of each class for the splitting q = v*w, via represented values
// coprime to q. chi_v and chi_w must agree on such values; any mismatch or an
// undecidable class is a logic error.
std::vector<double> genus_values(const Factorization& f, const ClassGroup& group) {
  std::vector<double> vals(size_t(group.h), 0.0);
  for (int i = 0; i < group.h; ++i) {
    const QuadForm& fm = group.forms[size_t(i)];
    double val = 0.0;
    for (int64_t y = 0; y <= 12 && val == 0.0; ++y) {
      for (int64_t x = -12; x <= 12 && val == 0.0; ++x) {
        int64_t n = fm.a * x * x + fm.b * x * y + fm.c * y * y;
        if (n <= 0 || std::gcd(n, f.q) != 1) continue;
        int cv = f.chi_v(n), cw = f.chi_w(n);
        if (cv != cw)
          throw std::logic_error("genus_character: chi_v and chi_w disagree on a norm");
        val = double(cv);
      }
    }
    if (val == 0.0)
      throw std::logic_error("genus_character: no represented value coprime to q");
    vals[size_t(i)] = val;
  }
  return vals;
}

}  // namespace

std::vector<ClassCharacter> characters(const ClassGroup& group) {
  const size_t m = group.generators.size();
  std::vector<int64_t> orders(m);
  for (size_t i = 0; i < m; ++i) orders[i] = group.generators[i].second;
  const double two_pi = 2.0 * std::acos(-1.0);

  std::vector<ClassCharacter> out;
  out.reserve(size_t(group.h));
  std::vector<int64_t> k(m, 0);
  int index = 0;
  while (true) {
    ClassCharacter ch;
    ch.index = index++;
    ch.exponents = k;
    ch.values.resize(size_t(group.h));
    bool real = true;
    for (size_t i = 0; i < m; ++i)
      if ((2 * k[i]) % orders[i] != 0) real = false;
    ch.is_real = real;
    for (int64_t a = 0; a < group.h; ++a) {
      double ang = 0.0;
      for (size_t i = 0; i < m; ++i)
        ang += double(k[i]) * double(group.dlog[size_t(a)][i]) / double(orders[i]);
      ch.values[size_t(a)] = real ? cplx(std::cos(two_pi * ang) > 0 ? 1.0 : -1.0, 0.0)
                                  : cplx(std::cos(two_pi * ang), std::sin(two_pi * ang));
    }
    out.push_back(std::move(ch));
    // lexicographic odometer: last digit fastest, first digit most significant
    bool done = (m == 0);
    size_t pos = m;
    while (pos > 0) {
      --pos;
      if (++k[pos] < orders[pos]) break;
      k[pos] = 0;
      if (pos == 0) done = true;
    }
    if (done) break;
  }

  // Attach genus factorizations: one real character per unordered splitting.
  FieldParams params(group.q);
  std::vector<int64_t> divisors;
  for (int64_t v = 1; v * v <= group.q; ++v)
    if (group.q % v == 0) divisors.push_back(v);
  for (int64_t v : divisors) {
    Factorization f(params, v);
    std::vector<double> gv = genus_values(f, group);
    bool matched = false;
    for (ClassCharacter& ch : out) {
      if (!ch.is_real || ch.genus.has_value()) continue;
      bool same = true;
      for (int64_t a = 0; a < group.h && same; ++a)
        if (std::abs(ch.values[size_t(a)].real() - gv[size_t(a)]) > 0.5) same = false;
      if (same) {
        ch.genus = f;
        matched = true;
        break;
      }
    }
    if (!matched) throw std::logic_error("characters: genus character not in the dual");
  }
  size_t n_real = 0, n_genus = 0;
  for (const ClassCharacter& ch : out) {
    if (ch.is_real) ++n_real;
    if (ch.genus.has_value()) ++n_genus;
  }
  if (n_real != n_genus)
    throw std::logic_error("characters: real character without a genus splitting");
  return out;
}

ClassCharacter genus_character(const Factorization& f, const ClassGroup& group) {
  std::vector<double> gv = genus_values(f, group);

  // Prime-ideal cross-check: for every rational prime p <= 1000 that splits or
  // ramifies, each class representing p must carry value chi_v(p) (or chi_w(p)
  // when p divides v).
  FieldParams params(group.q);
  for (int64_t p = 2; p <= 1000; ++p) {
    if (!is_squarefree(p) || prime_factors(p).size() != 1 || prime_factors(p)[0] != p)
      continue;  // not prime
    int chp = params.chi(p);
    if (chp == -1) continue;  // inert: no ideal of norm p
    int expected = (f.v % p == 0) ? f.chi_w(p) : f.chi_v(p);
    for (int64_t i = 0; i < group.h; ++i) {
      if (representation_count(group.forms[size_t(i)], p) == 0) continue;
      if (int(gv[size_t(i)]) != expected)
        throw std::logic_error("genus_character: recipe inconsistent on a prime ideal");
    }
  }

  for (const ClassCharacter& ch : characters(group)) {
    if (!ch.is_real) continue;
    bool same = true;
    for (int64_t a = 0; a < group.h && same; ++a)
      if (std::abs(ch.values[size_t(a)].real() - gv[size_t(a)]) > 0.5) same = false;
    if (same) {
      ClassCharacter result = ch;
      result.genus = f;
      return result;
    }
  }
  throw std::logic_error("genus_character: value vector not found in the dual group");
}

std::string class_group_json(const ClassGroup& group) {
  nlohmann::ordered_json j;
  j["q"] = group.q;
  j["h"] = group.h;
  auto& forms = j["forms"] = nlohmann::ordered_json::array();
  for (const QuadForm& f : group.forms) forms.push_back({f.a, f.b, f.c});
  auto& gens = j["generators"] = nlohmann::ordered_json::array();
  for (auto [idx, ord] : group.generators) gens.push_back({idx, ord});
  return j.dump();
}

}  // namespace hecke
