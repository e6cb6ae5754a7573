#pragma once

#include <string>
#include <vector>

#include "bcca/algebra.hpp"

namespace bcca {

// Which filtered algebra to work in: the one-family algebra spanned by the
// shifted generators U_k (k >= -1), or the two-family semidirect sum that
// also carries the V_k.
enum class FiltrationScope { O, bcca_uv };

FiltrationScope filtration_scope_parse(const std::string& s);
std::string filtration_scope_str(FiltrationScope scope);

// First `count` basis elements of the n-th filtration piece, in index order
// (U_k before V_k at each k for the two-family scope). Requires n >= -1,
// count >= 1.
std::vector<AlgElem> filtration_gens(FiltrationScope scope, long n, long count);

// Dimension of the abelianization of the n-th filtration piece, computed by
// row-reducing all pairwise brackets of the generators with indices <= window
// and counting the codimension inside the truncated piece. Requires
// window >= 2n + 6; throws DomainError if the answer differs between
// window - 1 and window (rank not stabilized).
long abelianization_dim(FiltrationScope scope, long n, long window);

}  // namespace bcca
