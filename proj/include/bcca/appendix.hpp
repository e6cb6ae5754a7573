#pragma once

#include <optional>
#include <set>

#include "bcca/algebra.hpp"

namespace bcca {

// The explicit generating family built from X1 = L_1 - lambda*L_{-1} and
// X2 = L_2 - mu*L_{-2} inside the Witt algebra. Defined only for
// mu != lambda^2 (Y1 divides by lambda^2 - mu).
struct AppendixFamily {
  AlgElem x1, x2, x3, x4, x5;
  AlgElem y5, y3, y1, ym1;
  AlgElem z;
};

AppendixFamily build_appendix_family(const Rat& lambda, const Rat& mu);

struct AppendixProbeResult {
  // Indices n with L_n in the bracket closure of {X1, X2}, truncated to
  // |index| <= window.
  std::set<long> generated;
  // True when mu = lambda^2: the explicit family is singular and not built.
  bool singular = false;
  std::optional<AppendixFamily> family;
  // Whether ym1 and z match their closed forms (meaningful when !singular).
  bool closed_forms_ok = false;
};

// Closes {X1, X2} under brackets for `depth` rounds, dropping elements whose
// support leaves |index| <= window, and reports which L_n lie in the span.
AppendixProbeResult appendix_probe(const Rat& lambda, const Rat& mu, long depth, long window);

}  // namespace bcca
