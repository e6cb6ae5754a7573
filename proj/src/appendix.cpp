#include "bcca/appendix.hpp"

#include <cstdlib>

#include "bcca/echelon.hpp"

namespace bcca {

namespace {

const AlgebraId kWitt{AlgName::witt, {}};

AlgElem ell(long n, const Rat& c) {
  AlgElem r;
  alg_insert(kWitt, r, Family::L, n, c);
  return r;
}

bool fits_window(const AlgElem& x, long window) {
  for (const auto& [s, c] : x.terms()) {
    (void)c;
    if (std::labs(s.index) > window) return false;
  }
  return true;
}

}  // namespace

AppendixFamily build_appendix_family(const Rat& lambda, const Rat& mu) {
  if (lambda.is_zero() || mu.is_zero()) throw DomainError("lambda and mu must be nonzero");
  if (mu == lambda * lambda) {
    throw DomainError("mu = lambda^2: the y1 step divides by lambda^2 - mu");
  }
  AppendixFamily fam;
  fam.x1 = ell(1, Rat(1)) - ell(-1, lambda);
  fam.x2 = ell(2, Rat(1)) - ell(-2, mu);
  fam.x3 = bracket(kWitt, fam.x2, fam.x1);
  fam.x4 = Rat(1, 2) * bracket(kWitt, fam.x3, fam.x1);
  fam.x5 = Rat(1, 3) * bracket(kWitt, fam.x4, fam.x1);
  fam.y5 = bracket(kWitt, fam.x3, fam.x2);
  fam.y3 = (Rat(-3) / (Rat(16) * lambda)) * (fam.x5 - fam.y5);
  // The scalar is chosen so that y1 = L_1 + lower-index terms, making the
  // leading term of x1 - y1 cancel.
  fam.y1 = (Rat(-16) * lambda / (Rat(45) * (lambda * lambda - mu))) * (fam.x3 - fam.y3);
  fam.ym1 = (Rat(-15) / (Rat(16) * lambda)) * (fam.x1 - fam.y1);
  // Scaled by lambda to clear the denominators of the bracket's
  // coefficients.
  fam.z = lambda * bracket(kWitt, fam.x1, fam.ym1);
  return fam;
}

AppendixProbeResult appendix_probe(const Rat& lambda, const Rat& mu, long depth, long window) {
  if (lambda.is_zero() || mu.is_zero()) throw DomainError("lambda and mu must be nonzero");
  if (depth < 1) throw DomainError("depth must be >= 1");
  if (window < 1) throw DomainError("window must be >= 1");

  AppendixProbeResult result;
  result.singular = (mu == lambda * lambda);
  if (!result.singular) {
    result.family = build_appendix_family(lambda, mu);
    const AlgElem ym1_closed = ell(-1, Rat(1)) + ell(-3, Rat(3) * mu / (Rat(16) * lambda)) +
                               ell(-5, mu * Rat(1, 16));
    const AlgElem z_closed = ell(0, Rat(2) * lambda) + ell(-2, Rat(3, 4) * mu) -
                             ell(-6, lambda * lambda * mu * Rat(1, 4));
    result.closed_forms_ok =
        result.family->ym1 == ym1_closed && result.family->z == z_closed;
  }

  // Brackets of in-window elements overshoot the window before reduction
  // brings them back, so the closure runs in a doubled working window;
  // membership is only ever claimed inside the requested one.
  const long work_window = 2 * window;
  EchelonSpace<BasisSymbol, SymbolLess> span;
  const auto try_add = [&](const AlgElem& x) {
    if (x.is_zero() || !fits_window(x, work_window)) return false;
    auto row = span.make_vec();
    for (const auto& [s, c] : x.terms()) row[s] = c;
    return span.insert(row);
  };
  try_add(ell(1, Rat(1)) - ell(-1, lambda));
  try_add(ell(2, Rat(1)) - ell(-2, mu));

  // Bracket the reduced spanning rows rather than the raw generators: rows
  // sparsify as the rank grows, so their products are more likely to stay
  // inside the window.
  const auto row_elems = [&span] {
    std::vector<AlgElem> out;
    for (const auto& row : span.rows()) {
      AlgElem e;
      for (const auto& [s, c] : row) e.add_raw(s, c);
      out.push_back(e);
    }
    return out;
  };
  for (long round = 0; round < depth; ++round) {
    const std::vector<AlgElem> rows = row_elems();
    bool grew = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = i + 1; j < rows.size(); ++j) {
        if (try_add(bracket(kWitt, rows[i], rows[j]))) grew = true;
      }
    }
    if (!grew) break;
  }

  for (long n = -window; n <= window; ++n) {
    auto probe = span.make_vec();
    probe[sym(Family::L, n)] = Rat(1);
    if (span.contains(probe)) result.generated.insert(n);
  }
  return result;
}

}  // namespace bcca
