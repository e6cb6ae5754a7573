#pragma once

#include "bcca/algebra.hpp"

namespace bcca {

// u_n expanded in the O basis (n >= 1), or v_n expanded in the P basis
// (n >= 0):
//   u_n = O_n + sum_{k=1..n/2} C(n,k) (1 - 2k/n) O_{n-2k}
//   v_n = Q_n + sum_{k=1..n/2} C(n,k) Q_{n-2k},  Q_0 = P_0 / 2, Q_j = P_j else
// The result lives in the bcca context.
AlgElem uv_from_OP(long n, Family which);

// Inverse expansion: O_n in the u basis (n >= 1) or P_n in the v basis
// (n >= 0), obtained by triangular back-substitution. The result lives in
// the b_uv context.
AlgElem op_from_uv(long n, Family which);

// Termwise basis changes between the O/P and u/v coordinates.
AlgElem to_uv_basis(const AlgElem& x);
AlgElem to_op_basis(const AlgElem& x);

enum class CentralCase { uu_even, uv_even_even, uv_odd_odd };

// C_M coefficient of [u_n, v_m] (or [u_n, u_m] for the uu case) inside the
// centrally extended algebra, from the closed binomial sums; mixed-parity
// u/v pairs and all u/u pairs carry no central term and return 0.
Rat central_term_uv(long n, long m, CentralCase which);

// Independent route to the same coefficient: expand u_n and v_m through the
// O/P and then L/M bases and accumulate the pairing (1/12) a (a^2 - 1) over
// matching L_a / M_{-a} pairs.
Rat central_term_lm_oracle(long n, long m);

}  // namespace bcca
