#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bcca/laurent.hpp"
#include "bcca/symbols.hpp"

namespace bcca {

enum class AlgName {
  witt,
  virasoro,
  bms3,
  bcca,
  bcca_hat,
  O,
  O_lambda,
  f_lambda,
  b_uv,
  b_UV,
};

// An algebra context: fixes the admissible symbol set, the normalization
// rules, and the bracket table. O_lambda and f_lambda carry a nonzero
// parameter lambda.
struct AlgebraId {
  AlgName name;
  std::optional<Rat> lambda;

  static AlgebraId parse(const std::string& name, std::optional<Rat> lambda = {});
  std::string str() const;

  friend bool operator==(const AlgebraId& a, const AlgebraId& b) {
    return a.name == b.name && a.lambda == b.lambda;
  }
  friend bool operator!=(const AlgebraId& a, const AlgebraId& b) {
    return !(a == b);
  }
};

// Sparse linear combination of basis symbols with exact coefficients; the
// zero element has no terms.
class AlgElem {
 public:
  AlgElem() = default;

  bool is_zero() const { return terms_.empty(); }
  const std::map<BasisSymbol, Rat, SymbolLess>& terms() const { return terms_; }
  Rat coeff(const BasisSymbol& s) const;

  // Raw insertion with no normalization; use alg_insert to respect an
  // algebra's index conventions.
  void add_raw(const BasisSymbol& s, const Rat& c);

  AlgElem operator-() const;
  AlgElem& operator+=(const AlgElem& o);
  AlgElem& operator-=(const AlgElem& o);
  friend AlgElem operator+(AlgElem a, const AlgElem& b) { a += b; return a; }
  friend AlgElem operator-(AlgElem a, const AlgElem& b) { a -= b; return a; }
  friend AlgElem operator*(const Rat& c, const AlgElem& x);
  friend bool operator==(const AlgElem& a, const AlgElem& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const AlgElem& a, const AlgElem& b) { return !(a == b); }

  // Canonical text: terms as "c*F:i" joined by " + ", families in rank
  // order, indices descending within a family; zero prints as "0".
  std::string str() const;

 private:
  std::map<BasisSymbol, Rat, SymbolLess> terms_;
};

// Validates the family against alg and applies its normalization rules
// (e.g. O with negative index flips sign, O index 0 vanishes, Olam picks up
// powers of lambda), then accumulates the term.
void alg_insert(const AlgebraId& alg, AlgElem& out, Family f, long index, const Rat& c);

// A single normalized basis element (coefficient 1 after normalization).
AlgElem alg_sym(const AlgebraId& alg, Family f, long index = 0);

bool family_admissible(const AlgebraId& alg, Family f);

// Parses the canonical AlgElem text form in the given context.
AlgElem alg_parse(const AlgebraId& alg, const std::string& text);

// The Lie bracket of the algebra, extended bilinearly; symbols are
// renormalized on output. Throws DomainError for inadmissible symbols and
// for the few hatted diagonal pairs whose bracket leaves the tracked span.
AlgElem bracket(const AlgebraId& alg, const AlgElem& x, const AlgElem& y);

// Exhaustively checks [x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0 over all basis
// triples with |index| <= window (families clipped to their ranges).
bool jacobi_check(const AlgebraId& alg, long window);

// All basis symbols of alg with |index| <= window, in canonical order.
std::vector<BasisSymbol> basis_window(const AlgebraId& alg, long window);

// True iff lambda/mu is a square of a rational; both must be nonzero.
bool o_lambda_iso(const Rat& lambda, const Rat& mu);

// True for families realized as weight -1 densities (M, P, Phat, v, V, m)
// rather than vector fields.
bool family_is_density(Family f);

// Realization of a basis symbol as a vector-field coefficient (families
// L, O, Ohat, Olam, f, u, ulam, U) or a density coefficient (M, P, Phat,
// v, V, m) in the variable t. Families without a Laurent realization
// return nullopt.
std::optional<LaurentPoly> laurent_realization(const AlgebraId& alg, const BasisSymbol& s);

// Action of a vector field f d/dt on a weight -1 density h dt^-1,
// returning the coefficient f h' - f' h.
LaurentPoly lp_density_action(const LaurentPoly& f, const LaurentPoly& h);

// Action used by the shifted U/V realization, where densities carry a
// square-root factor of s^2 - 4: a field g (s^2-4) d/ds acting on
// p sqrt(s^2-4) ds^-1 has polynomial part (s^2-4)(gp' - g'p) - s g p.
LaurentPoly lp_sqrt_twisted_action(const LaurentPoly& g, const LaurentPoly& p);

}  // namespace bcca
