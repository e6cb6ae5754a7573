#include "bcca/filtration.hpp"

#include "bcca/echelon.hpp"

namespace bcca {

namespace {

const AlgebraId kBUV{AlgName::b_UV, {}};

// Orders window-exceeding indices first so that echelon rows whose pivot
// lies inside the window have no support outside it.
struct WindowedSymbolLess {
  long window = 0;
  bool operator()(const BasisSymbol& a, const BasisSymbol& b) const {
    const bool a_high = a.index > window;
    const bool b_high = b.index > window;
    if (a_high != b_high) return a_high;
    return SymbolLess{}(a, b);
  }
};

long truncated_codim(FiltrationScope scope, long n, long window) {
  std::vector<AlgElem> gens;
  for (long k = n; k <= window; ++k) {
    gens.push_back(alg_sym(kBUV, Family::U, k));
    if (scope == FiltrationScope::bcca_uv) gens.push_back(alg_sym(kBUV, Family::V, k));
  }

  EchelonSpace<BasisSymbol, WindowedSymbolLess> derived(WindowedSymbolLess{window});
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const AlgElem br = bracket(kBUV, gens[i], gens[j]);
      auto row = derived.make_vec();
      for (const auto& [s, c] : br.terms()) row[s] = c;
      derived.insert(row);
    }
  }

  long rank_inside = 0;
  for (const auto& [pivot, row_idx] : derived.pivots()) {
    (void)row_idx;
    if (pivot.index <= window) ++rank_inside;
  }
  return static_cast<long>(gens.size()) - rank_inside;
}

}  // namespace

FiltrationScope filtration_scope_parse(const std::string& s) {
  if (s == "O") return FiltrationScope::O;
  if (s == "bcca_uv") return FiltrationScope::bcca_uv;
  throw DomainError("unknown filtration scope '" + s + "' (expected O or bcca_uv)");
}

std::string filtration_scope_str(FiltrationScope scope) {
  return scope == FiltrationScope::O ? "O" : "bcca_uv";
}

std::vector<AlgElem> filtration_gens(FiltrationScope scope, long n, long count) {
  if (n < -1) throw DomainError("filtration level must be >= -1");
  if (count < 1) throw DomainError("generator count must be >= 1");
  std::vector<AlgElem> out;
  long k = n;
  while (static_cast<long>(out.size()) < count) {
    out.push_back(alg_sym(kBUV, Family::U, k));
    if (scope == FiltrationScope::bcca_uv && static_cast<long>(out.size()) < count) {
      out.push_back(alg_sym(kBUV, Family::V, k));
    }
    ++k;
  }
  return out;
}

long abelianization_dim(FiltrationScope scope, long n, long window) {
  if (n < -1) throw DomainError("filtration level must be >= -1");
  if (window < 2 * n + 6) throw DomainError("window must be >= 2n + 6");
  const long at_window = truncated_codim(scope, n, window);
  const long at_prev = truncated_codim(scope, n, window - 1);
  if (at_window != at_prev) {
    throw DomainError("window too small: codimension has not stabilized");
  }
  return at_window;
}

}  // namespace bcca
