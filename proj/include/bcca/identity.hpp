#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bcca/laurent.hpp"

namespace bcca {

// Named rational values for the free parameters of an expression.
using ParamValues = std::map<std::string, Rat>;

// A parameterized expression: evaluates to a Laurent polynomial once every
// parameter is given a rational value. Plain rational expressions embed as
// constant polynomials.
using ParamExpr = std::function<LaurentPoly(const ParamValues&)>;

// A parameter together with a bound on the degree of lhs - rhs in it.
struct ParamBound {
  std::string name;
  long degree_bound = 0;
};

// Returns true on tuples that must not be sampled (e.g. points where an
// expression is undefined). The tester redraws until the grid avoids them.
using Exclusion = std::function<bool(const ParamValues&)>;

struct IdentityWitness {
  ParamValues point;
  LaurentPoly lhs_value;
  LaurentPoly rhs_value;
};

// Multipoint identity certificate. Samples degree_bound + 1 distinct
// rational points per parameter and evaluates both sides on the full grid.
// A polynomial of per-parameter degree <= b vanishing at b + 1 distinct
// values of each parameter is identically zero, so agreement on the grid
// proves lhs = rhs under the declared bounds. Sampling is deterministic
// for a fixed seed. Throws DomainError if any bound is <= 0; tuples hit by
// an exclusion are redrawn.
bool identity_test(const ParamExpr& lhs, const ParamExpr& rhs,
                   const std::vector<ParamBound>& bounds, std::uint64_t seed,
                   const std::vector<Exclusion>& exclusions = {},
                   std::optional<IdentityWitness>* witness_out = nullptr);

}  // namespace bcca
