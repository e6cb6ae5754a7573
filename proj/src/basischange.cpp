#include "bcca/basischange.hpp"

#include <algorithm>
#include <functional>

namespace bcca {

namespace {

const AlgebraId kBcca{AlgName::bcca, {}};
const AlgebraId kBuv{AlgName::b_uv, {}};
const AlgebraId kBms{AlgName::bms3, {}};

}  // namespace

AlgElem uv_from_OP(long n, Family which) {
  AlgElem r;
  if (which == Family::u) {
    if (n < 1) throw DomainError("u index must be >= 1");
    alg_insert(kBcca, r, Family::O, n, Rat(1));
    for (long k = 1; k <= n / 2; ++k) {
      const Rat coeff = rat_binom(n, k) * (Rat(1) - Rat(2 * k, n));
      alg_insert(kBcca, r, Family::O, n - 2 * k, coeff);
    }
    return r;
  }
  if (which == Family::v) {
    if (n < 0) throw DomainError("v index must be >= 0");
    const auto add_q = [&r](long j, const Rat& c) {
      alg_insert(kBcca, r, Family::P, j, j == 0 ? c * Rat(1, 2) : c);
    };
    add_q(n, Rat(1));
    for (long k = 1; k <= n / 2; ++k) add_q(n - 2 * k, rat_binom(n, k));
    return r;
  }
  throw DomainError("expected family u or v");
}

AlgElem op_from_uv(long n, Family which) {
  if (which == Family::O) {
    if (n < 1) throw DomainError("O index must be >= 1");
    // O_n = u_n - (lower-index O's re-expanded); back-substitute downward.
    AlgElem r = alg_sym(kBuv, Family::u, n);
    for (long k = 1; k <= n / 2; ++k) {
      const long j = n - 2 * k;
      if (j < 1) continue;  // O_0 contributes nothing
      const Rat coeff = rat_binom(n, k) * (Rat(1) - Rat(2 * k, n));
      r -= coeff * op_from_uv(j, Family::O);
    }
    return r;
  }
  if (which == Family::P) {
    if (n < 0) throw DomainError("P index must be >= 0");
    // Solve v_n = Q_n + sum C(n,k) Q_{n-2k} for Q_n, then undo Q_0 = P_0/2.
    // Q_n in the v basis:
    const std::function<AlgElem(long)> q_in_v = [&](long j) -> AlgElem {
      AlgElem r = alg_sym(kBuv, Family::v, j);
      for (long k = 1; k <= j / 2; ++k) {
        r -= rat_binom(j, k) * q_in_v(j - 2 * k);
      }
      return r;
    };
    if (n == 0) return Rat(2) * q_in_v(0);
    return q_in_v(n);
  }
  throw DomainError("expected family O or P");
}

AlgElem to_uv_basis(const AlgElem& x) {
  AlgElem r;
  for (const auto& [s, c] : x.terms()) {
    if (s.family != Family::O && s.family != Family::P) {
      throw DomainError("to_uv_basis expects O/P terms, got " + symbol_str(s));
    }
    r += c * op_from_uv(s.index, s.family);
  }
  return r;
}

AlgElem to_op_basis(const AlgElem& x) {
  AlgElem r;
  for (const auto& [s, c] : x.terms()) {
    if (s.family != Family::u && s.family != Family::v) {
      throw DomainError("to_op_basis expects u/v terms, got " + symbol_str(s));
    }
    r += c * uv_from_OP(s.index, s.family == Family::u ? Family::u : Family::v);
  }
  return r;
}

Rat central_term_uv(long n, long m, CentralCase which) {
  if (which == CentralCase::uu_even) return Rat(0);
  if (n < 1 || m < 0) throw DomainError("indices out of range for [u, v]");
  const bool n_even = (n % 2 == 0);
  const bool m_even = (m % 2 == 0);
  if (n_even != m_even) return Rat(0);
  Rat total(0);
  if (n_even) {
    // [u_{2a}, v_{2b}]: sum_{k=0}^{min(a,b)} C(2a,a-k) C(2b,b-k) k^2(4k^2-1) / (3a)
    const long a = n / 2;
    const long b = m / 2;
    for (long k = 0; k <= std::min(a, b); ++k) {
      total += rat_binom(2 * a, a - k) * rat_binom(2 * b, b - k) *
               Rat(k * k * (4 * k * k - 1)) / Rat(3 * a);
    }
  } else {
    // [u_{2a+1}, v_{2b+1}]: sum C(2a+1,a-k) C(2b+1,b-k) 2k(2k+1)^2(k+1) / (3(2a+1))
    const long a = (n - 1) / 2;
    const long b = (m - 1) / 2;
    for (long k = 0; k <= std::min(a, b); ++k) {
      total += rat_binom(2 * a + 1, a - k) * rat_binom(2 * b + 1, b - k) *
               Rat(2 * k * (2 * k + 1) * (2 * k + 1) * (k + 1)) / Rat(3 * (2 * a + 1));
    }
  }
  return total;
}

Rat central_term_lm_oracle(long n, long m) {
  // Through O/P and then L/M: O_a = L_a - L_{-a}, P_b = M_b + M_{-b}
  // (P_0 = 2 M_0), with pairing [L_a, M_c] -> (1/12) a (a^2-1) delta_{a+c,0}.
  const AlgElem u_op = uv_from_OP(n, Family::u);
  const AlgElem v_op = uv_from_OP(m, Family::v);
  AlgElem u_lm, v_lm;
  for (const auto& [s, c] : u_op.terms()) {
    alg_insert(kBms, u_lm, Family::L, s.index, c);
    alg_insert(kBms, u_lm, Family::L, -s.index, -c);
  }
  for (const auto& [s, c] : v_op.terms()) {
    alg_insert(kBms, v_lm, Family::M, s.index, c);
    alg_insert(kBms, v_lm, Family::M, -s.index, c);
  }
  const AlgElem full = bracket(kBms, u_lm, v_lm);
  return full.coeff(sym(Family::C_M));
}

}  // namespace bcca
