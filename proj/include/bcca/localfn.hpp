#pragma once

#include <string>
#include <vector>

#include "bcca/laurent.hpp"
#include "bcca/rat.hpp"
#include "bcca/repmods.hpp"

namespace bcca {

// One base point of an evaluation functional: the point x together with the
// derivative coefficients applied there. The trailing coefficient must be
// nonzero; its position is the order of the point.
struct LocalPoint {
  Rat base;
  std::vector<Rat> coeffs;

  long order() const { return static_cast<long>(coeffs.size()) - 1; }

  friend bool operator==(const LocalPoint& a, const LocalPoint& b) {
    return a.base == b.base && a.coeffs == b.coeffs;
  }
};

// Linear functional on polynomial vector fields f d/ds given by a finite sum
// of derivative evaluations: f maps to sum over points of
// coeffs[0]*f(base) + coeffs[1]*f'(base) + ... Base points are pairwise
// distinct and every trailing coefficient is nonzero.
class LocalFunction {
 public:
  explicit LocalFunction(std::vector<LocalPoint> points);

  // Drops trailing zero coefficients and all-zero points, then validates.
  static LocalFunction trimmed(std::vector<LocalPoint> points);

  const std::vector<LocalPoint>& points() const { return points_; }

  std::string str() const;

  friend bool operator==(const LocalFunction& a, const LocalFunction& b) {
    return a.points_ == b.points_;
  }

 private:
  std::vector<LocalPoint> points_;
};

// chi applied to the vector field f d/ds; f must have no negative exponents.
Rat eval_local(const LocalFunction& chi, const LaurentPoly& f);

// The bilinear form (u, v) -> chi([u d/ds, v d/ds]) = chi(u v' - u' v).
// Antisymmetric; u and v must be polynomials.
Rat bform(const LocalFunction& chi, const LaurentPoly& u, const LaurentPoly& v);

// Vector-field coefficient realizing the symbol U:k, namely -s^{k+1}(s^2-4).
LaurentPoly u_field_poly(long k);

// Product of (s - x)^{floor(order/2) + 1} over the points of chi; its
// polynomial multiples span the canonical isotropic subalgebra for bform.
LaurentPoly polarization_poly(const LocalFunction& chi);

// True when every point of chi has order at least 1. Consumed as the
// black-box simplicity criterion for the induced module of chi.
bool all_orders_positive(const LocalFunction& chi);

// Result of expressing level-n Whittaker data as a three-point local
// function based at 0, 2, -2. alpha holds the full coefficient list at the
// base point 0 (alpha[0] = 1 and alpha[1..n] = 0 by convention; the solved
// entries are alpha[n+1..2n+1]); beta1 and gamma1 are the order-1
// coefficients at 2 and -2, whose order-0 companions are fixed to 1.
struct LocalSolveReport {
  LocalFunction chi;
  std::vector<Rat> alpha;
  Rat beta1;
  Rat gamma1;
  bool alpha_top_nonzero;     // alpha_{2n+1} != 0
  bool alpha_subtop_nonzero;  // alpha_{2n} != 0; always false at level 0
  bool even_step_differs;     // phi(U_{2n+2}) != 4 phi(U_{2n})
  bool odd_step_differs;      // phi(U_{2n+1}) != 4 phi(U_{2n-1}); level >= 1
};

// Solves the (n+3)-unknown linear system making the assembled local function
// restrict to phi on every U:k, and verifies that round trip before
// returning. Rejects V-carrying Whittaker data.
LocalSolveReport solve_whittaker_local(const WhittakerFn& phi);

// k! * (k-1)! * ... * 1!, with the empty product for k <= 0.
Rat superfactorial(long k);

// Row-evaluation convention for the alternant determinant below: rows taken
// at u..u+2r-1, or shifted one step to u+1..u+2r.
enum class TauConvention { kStandard, kShifted };

// Exact determinant of the 2r x 2r matrix with columns
// 1, n, ..., n^{r-1}, mu^n, mu^n n, ..., mu^n n^{r-1} evaluated down the
// chosen row range, and its closed form
// (superfactorial(r-1))^2 * mu^{r(r+2u-1)/2} * (mu-1)^{r^2}
// (with u shifted by one under the shifted convention). Both reject
// mu in {0, 1}, r < 1, and u < 0.
Rat tau_direct(const Rat& mu, long r, long u,
               TauConvention conv = TauConvention::kStandard);
Rat tau_formula(const Rat& mu, long r, long u,
                TauConvention conv = TauConvention::kStandard);

}  // namespace bcca
