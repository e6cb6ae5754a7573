#pragma once

#include <map>
#include <string>

#include "bcca/rat.hpp"

namespace bcca {

// Sparse Laurent polynomial in one variable t, exponents in Z. Terms are
// kept in ascending exponent order with no zero coefficients, so equality
// is structural and serialization is canonical.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const Rat& constant) { add_term(0, constant); }

  static LaurentPoly monomial(long exp, const Rat& coeff) {
    LaurentPoly p;
    p.add_term(exp, coeff);
    return p;
  }

  // Parses the canonical text form: "0" or `c*t^k` terms joined by " + ".
  static LaurentPoly parse(const std::string& text);

  bool is_zero() const { return terms_.empty(); }
  Rat coeff(long exp) const;
  long min_exp() const;  // DomainError on the zero polynomial
  long max_exp() const;
  std::size_t term_count() const { return terms_.size(); }
  const std::map<long, Rat>& terms() const { return terms_; }

  void add_term(long exp, const Rat& coeff);

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { a += b; return a; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { a -= b; return a; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const Rat& c, const LaurentPoly& p);

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) {
    return !(a == b);
  }

  // Termwise d/dt.
  LaurentPoly derive() const;

  // Coefficient of t^{-1}.
  Rat residue() const { return coeff(-1); }

  // Evaluation at t = x; x must be nonzero when negative exponents occur.
  Rat eval(const Rat& x) const;

  // Substitution t -> alpha * t (alpha nonzero): c*t^k becomes c*alpha^k*t^k.
  LaurentPoly scale_var(const Rat& alpha) const;

  // Canonical text form: `c*t^k` terms ascending in k, joined by " + ";
  // the zero polynomial prints as "0".
  std::string str() const;

 private:
  std::map<long, Rat> terms_;
};

// d/dt as a free function, to match the naming used in reports.
LaurentPoly lp_derive(const LaurentPoly& p);

// Coefficient polynomial of [f d/dt, g d/dt] = (fg' - f'g) d/dt.
LaurentPoly lp_witt_bracket(const LaurentPoly& f, const LaurentPoly& g);

// (1/12) * Res_0(f' g''), the central charge pairing on vector fields.
Rat lp_vir_cocycle(const LaurentPoly& f, const LaurentPoly& g);

}  // namespace bcca
