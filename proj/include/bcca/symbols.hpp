#pragma once

#include <compare>
#include <optional>
#include <string>

#include "bcca/rat.hpp"

namespace bcca {

// Basis families across all supported algebras. Enum order doubles as the
// family rank used everywhere a canonical symbol order is needed (printing,
// pivoting, and word normalization): L < M < O < Ohat < P < Phat < u < v <
// U < V < f < m < X < Olam < ulam, with central symbols last.
enum class Family {
  L,
  M,
  O,
  Ohat,
  P,
  Phat,
  u,
  v,
  U,
  V,
  f,
  m,
  X,
  Olam,
  ulam,
  C,
  C_L,
  C_M,
};

bool family_is_central(Family f);
std::string family_name(Family f);
Family family_parse(const std::string& name);

// One basis symbol: a family plus an integer index (central symbols carry
// none) and, for the lambda-indexed families Olam/ulam, the parameter value.
struct BasisSymbol {
  Family family;
  long index = 0;
  std::optional<Rat> param;

  friend bool operator==(const BasisSymbol& a, const BasisSymbol& b) {
    return a.family == b.family && a.index == b.index && a.param == b.param;
  }
};

// Total order by (family rank, index, param); used for canonical term maps.
struct SymbolLess {
  bool operator()(const BasisSymbol& a, const BasisSymbol& b) const {
    if (a.family != b.family) return a.family < b.family;
    if (a.index != b.index) return a.index < b.index;
    if (a.param.has_value() != b.param.has_value()) return !a.param.has_value();
    if (a.param && b.param && *a.param != *b.param) return *a.param < *b.param;
    return false;
  }
};

inline BasisSymbol sym(Family f, long index = 0) { return BasisSymbol{f, index, {}}; }

// Text form "O:5", "L:-3", "C_M". The lambda parameter is never printed; it
// is restamped from the algebra context when parsing.
std::string symbol_str(const BasisSymbol& s);
BasisSymbol symbol_parse(const std::string& text);

}  // namespace bcca
