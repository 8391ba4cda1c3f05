#pragma once
// Binary quadratic forms of discriminant -q, Gauss reduction and composition,
// class-group enumeration with cyclic decomposition, the character dual, genus
// characters, and representation counts (the theta-coefficient source).
#include <optional>
#include <string>
#include <vector>

#include "hecke/arith.hpp"

namespace hecke {

struct QuadForm {
  int64_t a = 0, b = 0, c = 0;
  bool operator==(const QuadForm&) const = default;
  auto operator<=>(const QuadForm&) const = default;  // lexicographic (a, b, c)
};

// Discriminant b^2 - 4ac must equal -q; form must be primitive with a > 0.
// Result satisfies |b| <= a <= c with b > 0 when |b| = a or a = c.
QuadForm reduce_form(QuadForm f, int64_t q);

// Gauss/Dirichlet composition; inputs need not be reduced, output is reduced.
QuadForm compose_forms(const QuadForm& f1, const QuadForm& f2, int64_t q);

// #{(x,y) in Z^2 : f(x,y) = n}; finite since f is positive definite. n = 0 -> 1.
int64_t representation_count(const QuadForm& f, int64_t n);

struct ClassGroup {
  int64_t q = 0;
  int64_t h = 0;
  std::vector<QuadForm> forms;  // reduced, sorted lexicographically; principal first
  // Cyclic decomposition: (form index, order) per generator; orders form a
  // divisibility chain n_{i+1} | n_i and multiply to h. Every class is
  // uniquely prod g_i^{e_i} with 0 <= e_i < n_i; dlog stores the exponents.
  std::vector<std::pair<int, int64_t>> generators;
  std::vector<std::vector<int64_t>> dlog;

  int index_of(const QuadForm& reduced) const;  // -1 if absent
  int compose(int i, int j) const;
  int identity_index() const { return 0; }

 private:
  friend ClassGroup enumerate_class_group(const FieldParams&);
  std::vector<int> mult_;  // h*h table when small enough, else empty
};

ClassGroup enumerate_class_group(const FieldParams& params);

// Count of reduced forms only (no group structure); the fast path for sweeps.
int64_t class_number(int64_t q);

struct ClassCharacter {
  int index = 0;                      // lexicographic over exponent vectors
  std::vector<int64_t> exponents;     // k_i against the generator list
  std::vector<cplx> values;           // value on each class, by class index
  bool is_real = false;
  std::optional<Factorization> genus; // set when the character is a genus character
};

// Full dual group, h characters; index 0 is trivial. Exactly tau(q)/2 are real
// and each real one is matched to its coprime splitting q = v*w.
std::vector<ClassCharacter> characters(const ClassGroup& group);

// The genus character attached to q = v*w, evaluated through represented values
// and cross-checked on every prime ideal of norm <= 1000 (split and ramified);
// throws std::logic_error if the recipe is inconsistent.
ClassCharacter genus_character(const Factorization& f, const ClassGroup& group);

// Stable serialization {q, h, forms, generators} for golden-file comparisons.
std::string class_group_json(const ClassGroup& group);

}  // namespace hecke
