#include "bcca/localfn.hpp"

#include <cstddef>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace bcca {
namespace {

// f^{(j)}(x) for a polynomial f.
Rat derivative_at(const LaurentPoly& f, long j, const Rat& x) {
  LaurentPoly d = f;
  for (long i = 0; i < j && !d.is_zero(); ++i) d = d.derive();
  return d.eval(x);
}

void require_polynomial(const LaurentPoly& f, const char* what) {
  if (!f.is_zero() && f.min_exp() < 0) {
    throw DomainError(std::string(what) + " must have no negative exponents");
  }
}

// Solves a*x = rhs exactly by Gauss-Jordan elimination.
std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> a,
                              std::vector<Rat> rhs) {
  const std::size_t dim = a.size();
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t piv = col;
    while (piv < dim && a[piv][col].is_zero()) ++piv;
    if (piv == dim) throw InternalError("singular linear system");
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    const Rat inv = Rat(1) / a[col][col];
    for (auto& entry : a[col]) entry *= inv;
    rhs[col] *= inv;
    for (std::size_t row = 0; row < dim; ++row) {
      if (row == col || a[row][col].is_zero()) continue;
      const Rat factor = a[row][col];
      for (std::size_t k = col; k < dim; ++k) {
        a[row][k] -= factor * a[col][k];
      }
      rhs[row] -= factor * rhs[col];
    }
  }
  return rhs;
}

Rat determinant(std::vector<std::vector<Rat>> m) {
  const std::size_t dim = m.size();
  Rat result(1);
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t piv = col;
    while (piv < dim && m[piv][col].is_zero()) ++piv;
    if (piv == dim) return Rat(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      result = -result;
    }
    result *= m[col][col];
    const Rat inv = Rat(1) / m[col][col];
    for (std::size_t row = col + 1; row < dim; ++row) {
      if (m[row][col].is_zero()) continue;
      const Rat factor = m[row][col] * inv;
      for (std::size_t k = col; k < dim; ++k) {
        m[row][k] -= factor * m[col][k];
      }
    }
  }
  return result;
}

void check_tau_inputs(const Rat& mu, long r, long u) {
  if (mu.is_zero() || mu == Rat(1)) {
    throw DomainError("tau requires mu outside {0, 1}");
  }
  if (r < 1) throw DomainError("tau requires r >= 1");
  if (u < 0) throw DomainError("tau requires u >= 0");
}

}  // namespace

LocalFunction::LocalFunction(std::vector<LocalPoint> points)
    : points_(std::move(points)) {
  std::set<Rat> seen;
  for (const auto& pt : points_) {
    if (pt.coeffs.empty()) {
      throw DomainError("local-function point with no coefficients");
    }
    if (pt.coeffs.back().is_zero()) {
      throw DomainError("local-function point with zero trailing coefficient");
    }
    if (!seen.insert(pt.base).second) {
      throw DomainError("local-function base points must be distinct");
    }
  }
}

LocalFunction LocalFunction::trimmed(std::vector<LocalPoint> points) {
  std::vector<LocalPoint> kept;
  for (auto& pt : points) {
    while (!pt.coeffs.empty() && pt.coeffs.back().is_zero()) {
      pt.coeffs.pop_back();
    }
    if (!pt.coeffs.empty()) kept.push_back(std::move(pt));
  }
  return LocalFunction(std::move(kept));
}

std::string LocalFunction::str() const {
  if (points_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& pt : points_) {
    if (!first) out << " + ";
    first = false;
    out << "chi_{" << pt.base.str() << ";";
    for (std::size_t i = 0; i < pt.coeffs.size(); ++i) {
      if (i) out << ",";
      out << pt.coeffs[i].str();
    }
    out << "}";
  }
  return out.str();
}

Rat eval_local(const LocalFunction& chi, const LaurentPoly& f) {
  require_polynomial(f, "local-function argument");
  Rat total(0);
  for (const auto& pt : chi.points()) {
    LaurentPoly d = f;
    for (std::size_t j = 0; j < pt.coeffs.size(); ++j) {
      if (j > 0) d = d.derive();
      total += pt.coeffs[j] * d.eval(pt.base);
    }
  }
  return total;
}

Rat bform(const LocalFunction& chi, const LaurentPoly& u,
          const LaurentPoly& v) {
  require_polynomial(u, "bform argument");
  require_polynomial(v, "bform argument");
  return eval_local(chi, lp_witt_bracket(u, v));
}

LaurentPoly u_field_poly(long k) {
  LaurentPoly p = LaurentPoly::monomial(k + 3, Rat(-1));
  p += LaurentPoly::monomial(k + 1, Rat(4));
  return p;
}

LaurentPoly polarization_poly(const LocalFunction& chi) {
  LaurentPoly result{Rat(1)};
  for (const auto& pt : chi.points()) {
    LaurentPoly linear = LaurentPoly::monomial(1, Rat(1));
    linear += LaurentPoly(-pt.base);
    const long mult = pt.order() / 2 + 1;
    for (long i = 0; i < mult; ++i) result = result * linear;
  }
  return result;
}

bool all_orders_positive(const LocalFunction& chi) {
  for (const auto& pt : chi.points()) {
    if (pt.order() < 1) return false;
  }
  return true;
}

LocalSolveReport solve_whittaker_local(const WhittakerFn& phi) {
  if (phi.algebra() != 'O') {
    throw DomainError(
        "unsupported-spec: the local-function solver takes U-only Whittaker "
        "data");
  }
  const long n = phi.level();
  const long dim = n + 3;
  const Rat two(2), minus_two(-2);

  // Unknowns, in column order: alpha_{n+1}..alpha_{2n+1}, beta_1, gamma_1.
  // Row k states that the assembled function evaluates to phi(U_{n+k}) on
  // the field realizing U:{n+k}; the fixed order-0 coefficients at 0, 2, -2
  // (all equal to 1) are moved to the right-hand side.
  std::vector<std::vector<Rat>> a(dim, std::vector<Rat>(dim, Rat(0)));
  std::vector<Rat> rhs(dim, Rat(0));
  for (long row = 0; row < dim; ++row) {
    const long k = n + row;
    const LaurentPoly fk = u_field_poly(k);
    for (long i = 0; i <= n; ++i) {
      a[row][i] = derivative_at(fk, n + 1 + i, Rat(0));
    }
    a[row][n + 1] = derivative_at(fk, 1, two);
    a[row][n + 2] = derivative_at(fk, 1, minus_two);
    rhs[row] = phi.u_value(k) - fk.eval(Rat(0)) - fk.eval(two) -
               fk.eval(minus_two);
  }
  const std::vector<Rat> solved = solve_linear(std::move(a), std::move(rhs));

  std::vector<Rat> alpha(2 * n + 2, Rat(0));
  alpha[0] = Rat(1);
  for (long i = 0; i <= n; ++i) alpha[n + 1 + i] = solved[i];
  const Rat beta1 = solved[n + 1];
  const Rat gamma1 = solved[n + 2];

  LocalFunction chi = LocalFunction::trimmed({{Rat(0), alpha},
                                              {two, {Rat(1), beta1}},
                                              {minus_two, {Rat(1), gamma1}}});
  for (long k = n; k <= 2 * n + 2; ++k) {
    if (eval_local(chi, u_field_poly(k)) != phi.u_value(k)) {
      throw InternalError("local-function solve failed its round trip");
    }
  }

  LocalSolveReport report{std::move(chi),
                          std::move(alpha),
                          beta1,
                          gamma1,
                          !solved[n].is_zero(),
                          n >= 1 && !solved[n - 1].is_zero(),
                          phi.u_value(2 * n + 2) != Rat(4) * phi.u_value(2 * n),
                          n >= 1 && phi.u_value(2 * n + 1) !=
                                        Rat(4) * phi.u_value(2 * n - 1)};
  return report;
}

Rat superfactorial(long k) {
  Rat result(1);
  for (long i = 2; i <= k; ++i) result *= rat_factorial(i);
  return result;
}

Rat tau_direct(const Rat& mu, long r, long u, TauConvention conv) {
  check_tau_inputs(mu, r, u);
  const long start = u + (conv == TauConvention::kShifted ? 1 : 0);
  std::vector<std::vector<Rat>> m(2 * r, std::vector<Rat>(2 * r));
  for (long p = 0; p < 2 * r; ++p) {
    const Rat point(start + p);
    const Rat mu_pow = mu.pow(start + p);
    Rat power(1);
    for (long q = 0; q < r; ++q) {
      m[p][q] = power;
      m[p][r + q] = mu_pow * power;
      power *= point;
    }
  }
  return determinant(std::move(m));
}

Rat tau_formula(const Rat& mu, long r, long u, TauConvention conv) {
  check_tau_inputs(mu, r, u);
  const long ueff = u + (conv == TauConvention::kShifted ? 1 : 0);
  const long twice_exp = r * (r + 2 * ueff - 1);
  if (twice_exp % 2 != 0) throw InternalError("tau exponent must be even");
  const Rat sf = superfactorial(r - 1);
  return sf * sf * mu.pow(twice_exp / 2) * (mu - Rat(1)).pow(r * r);
}

}  // namespace bcca
