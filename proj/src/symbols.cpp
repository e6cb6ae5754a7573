#include "bcca/symbols.hpp"

#include <array>
#include <utility>

namespace bcca {

namespace {

constexpr std::array<std::pair<Family, const char*>, 18> kFamilyNames{{
    {Family::L, "L"},
    {Family::M, "M"},
    {Family::O, "O"},
    {Family::Ohat, "Ohat"},
    {Family::P, "P"},
    {Family::Phat, "Phat"},
    {Family::u, "u"},
    {Family::v, "v"},
    {Family::U, "U"},
    {Family::V, "V"},
    {Family::f, "f"},
    {Family::m, "m"},
    {Family::X, "X"},
    {Family::Olam, "Olam"},
    {Family::ulam, "ulam"},
    {Family::C, "C"},
    {Family::C_L, "C_L"},
    {Family::C_M, "C_M"},
}};

}  // namespace

bool family_is_central(Family f) {
  return f == Family::C || f == Family::C_L || f == Family::C_M;
}

std::string family_name(Family f) {
  for (const auto& [fam, name] : kFamilyNames) {
    if (fam == f) return name;
  }
  throw InternalError("unnamed family");
}

Family family_parse(const std::string& name) {
  for (const auto& [fam, fname] : kFamilyNames) {
    if (name == fname) return fam;
  }
  throw DomainError("unknown symbol family: '" + name + "'");
}

std::string symbol_str(const BasisSymbol& s) {
  if (family_is_central(s.family)) return family_name(s.family);
  return family_name(s.family) + ":" + std::to_string(s.index);
}

BasisSymbol symbol_parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const Family f = family_parse(text);
    if (!family_is_central(f)) {
      throw DomainError("symbol '" + text + "' requires an index");
    }
    return sym(f);
  }
  const Family f = family_parse(text.substr(0, colon));
  if (family_is_central(f)) {
    throw DomainError("central symbol '" + text + "' must not carry an index");
  }
  const std::string idx = text.substr(colon + 1);
  try {
    std::size_t used = 0;
    const long n = std::stol(idx, &used);
    if (used != idx.size()) throw std::invalid_argument(idx);
    return sym(f, n);
  } catch (const std::logic_error&) {
    throw DomainError("malformed symbol index: '" + idx + "'");
  }
}

}  // namespace bcca
