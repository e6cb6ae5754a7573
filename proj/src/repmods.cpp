#include "bcca/repmods.hpp"

#include <algorithm>
#include <sstream>

#include "bcca/basischange.hpp"

namespace bcca {

namespace {

long mag_weight(const Monomial& m) {
  long w = 0;
  for (const auto& s : m.factors) w += s.index < 0 ? -s.index : s.index;
  return w;
}

long count_factor(const Monomial& m, Family f, long index) {
  long c = 0;
  for (const auto& s : m.factors)
    if (s.family == f && s.index == index) ++c;
  return c;
}

long count_ohat(const Monomial& m) {
  long c = 0;
  for (const auto& s : m.factors)
    if (s.family == Family::Ohat) ++c;
  return c;
}

std::string range_str(long lo, long hi) {
  return std::to_string(lo) + ".." + std::to_string(hi);
}

void check_value_keys(const std::map<long, Rat>& m, long lo, long hi,
                      const char* what) {
  bool ok = static_cast<long>(m.size()) == hi - lo + 1 && !m.empty() &&
            m.begin()->first == lo && m.rbegin()->first == hi;
  if (!ok)
    throw DomainError(std::string("unsupported-spec: ") + what +
                      " values must cover indices " + range_str(lo, hi) +
                      " exactly");
}

bool is_induced(ModKind k) {
  switch (k) {
    case ModKind::verma_vir:
    case ModKind::verma_bms:
    case ModKind::massive:
    case ModKind::whittaker_O:
    case ModKind::whittaker_b:
    case ModKind::quasi_whittaker_bms:
      return true;
    default:
      return false;
  }
}

// Free-generator test for the labels of the induced kinds.
bool label_symbol_ok(const ModuleSpec& spec, const BasisSymbol& s) {
  switch (spec.kind) {
    case ModKind::verma_vir:
      return s.family == Family::L && s.index <= -1;
    case ModKind::verma_bms:
      return (s.family == Family::L || s.family == Family::M) && s.index <= -1;
    case ModKind::massive:
      return s.family == Family::L && s.index != 0;
    case ModKind::quasi_whittaker_bms:
      return s.family == Family::L;
    case ModKind::whittaker_O:
      return s.family == Family::U && s.index >= -1 &&
             s.index < spec.fn->level();
    case ModKind::whittaker_b:
      return (s.family == Family::U || s.family == Family::V) &&
             s.index >= -1 && s.index < spec.fn->level();
    default:
      return false;
  }
}

void validate_label(const ModuleSpec& spec, const ModLabel& l) {
  if (is_induced(spec.kind)) {
    if (l.index != 0)
      throw DomainError("invalid-label: induced labels carry no index");
    for (const auto& s : l.word.factors)
      if (!label_symbol_ok(spec, s))
        throw DomainError("invalid-label: " + symbol_str(s) +
                          " is not a free generator of " + spec.str());
    if (!monomial_is_normal(l.word, PbwBlockFn{}))
      throw DomainError("invalid-label: word " + l.word.str() +
                        " is not in normal order");
    return;
  }
  if (!l.word.factors.empty())
    throw DomainError("invalid-label: indexed labels carry no word");
  switch (spec.kind) {
    case ModKind::tensor_density:
      return;
    case ModKind::pb:
      if (l.index < 0) throw DomainError("invalid-label: P labels need index >= 0");
      return;
    case ModKind::pb_tilde:
      if (l.index < 1) throw DomainError("invalid-label: Pt labels need index >= 1");
      return;
    case ModKind::omega:
      if (l.index < 0) throw DomainError("invalid-label: X exponents are >= 0");
      return;
    default:
      throw InternalError("unhandled module kind");
  }
}

PbwBlockFn induced_block(const ModuleSpec& spec) {
  switch (spec.kind) {
    case ModKind::verma_vir:
      return [](const BasisSymbol& s) {
        return (s.family == Family::L && s.index <= -1) ? 0 : 1;
      };
    case ModKind::verma_bms:
      return [](const BasisSymbol& s) {
        return ((s.family == Family::L || s.family == Family::M) &&
                s.index <= -1)
                   ? 0
                   : 1;
      };
    case ModKind::massive:
      return [](const BasisSymbol& s) {
        return (s.family == Family::L && s.index != 0) ? 0 : 1;
      };
    case ModKind::quasi_whittaker_bms:
      return [](const BasisSymbol& s) { return s.family == Family::L ? 0 : 1; };
    case ModKind::whittaker_O:
    case ModKind::whittaker_b: {
      long n = spec.fn->level();
      return [n](const BasisSymbol& s) { return s.index < n ? 0 : 1; };
    }
    default:
      throw InternalError("block function requested for a non-induced kind");
  }
}

std::function<Rat(const BasisSymbol&)> induced_char(const ModuleSpec& spec) {
  switch (spec.kind) {
    case ModKind::verma_vir: {
      Rat h = spec.params[0], c = spec.params[1];
      return [h, c](const BasisSymbol& s) -> Rat {
        if (s.family == Family::C) return c;
        if (s.family == Family::L) return s.index == 0 ? h : Rat(0);
        throw InternalError("character applied outside its domain");
      };
    }
    case ModKind::verma_bms: {
      Rat hl = spec.params[0], hm = spec.params[1];
      Rat cl = spec.params[2], cm = spec.params[3];
      return [hl, hm, cl, cm](const BasisSymbol& s) -> Rat {
        switch (s.family) {
          case Family::C_L: return cl;
          case Family::C_M: return cm;
          case Family::L: return s.index == 0 ? hl : Rat(0);
          case Family::M: return s.index == 0 ? hm : Rat(0);
          default: throw InternalError("character applied outside its domain");
        }
      };
    }
    case ModKind::massive: {
      Rat bm = spec.params[0], bs = spec.params[1];
      Rat cl = spec.params[2], cm = spec.params[3];
      return [bm, bs, cl, cm](const BasisSymbol& s) -> Rat {
        switch (s.family) {
          case Family::C_L: return cl;
          case Family::C_M: return cm;
          case Family::L: return s.index == 0 ? bs : Rat(0);
          case Family::M: return s.index == 0 ? bm : Rat(0);
          default: throw InternalError("character applied outside its domain");
        }
      };
    }
    case ModKind::quasi_whittaker_bms: {
      Rat bm = spec.params[0], cl = spec.params[1], cm = spec.params[2];
      return [bm, cl, cm](const BasisSymbol& s) -> Rat {
        switch (s.family) {
          case Family::C_L: return cl;
          case Family::C_M: return cm;
          case Family::M: return s.index == 0 ? bm : Rat(0);
          default: throw InternalError("character applied outside its domain");
        }
      };
    }
    case ModKind::whittaker_O:
    case ModKind::whittaker_b: {
      WhittakerFn fn = *spec.fn;
      return [fn](const BasisSymbol& s) { return fn.value(s); };
    }
    default:
      throw InternalError("character requested for a non-induced kind");
  }
}

// (X + c0) * f(X + n), on exponent-keyed coefficients.
std::map<long, Rat> poly_shift_mul(const std::map<long, Rat>& f, long n,
                                   const Rat& c0) {
  std::map<long, Rat> shifted;
  for (const auto& [d, coeff] : f) {
    for (long j = 0; j <= d; ++j) {
      Rat c = coeff * rat_binom(d, j) * Rat(n).pow(d - j);
      if (c.is_zero()) continue;
      auto [it, fresh] = shifted.emplace(j, c);
      if (!fresh && (it->second += c, it->second.is_zero())) shifted.erase(it);
    }
  }
  std::map<long, Rat> out;
  auto add = [&out](long d, const Rat& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = out.emplace(d, c);
    if (!fresh && (it->second += c, it->second.is_zero())) out.erase(it);
  };
  for (const auto& [d, coeff] : shifted) {
    add(d + 1, coeff);
    add(d, c0 * coeff);
  }
  return out;
}

std::vector<Rat> gauss_solve(std::vector<std::vector<Rat>> a,
                             std::vector<Rat> rhs) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw InternalError("singular linear system");
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    Rat lead = a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] = a[col][j] / lead;
    rhs[col] = rhs[col] / lead;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Rat f = a[r][col];
      for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      rhs[r] -= f * rhs[col];
    }
  }
  return rhs;
}

}  // namespace

WhittakerFn::WhittakerFn(char algebra, long level, std::map<long, Rat> u_values,
                         std::map<long, Rat> v_values)
    : algebra_(algebra), level_(level), u_(std::move(u_values)),
      v_(std::move(v_values)) {
  if (algebra_ != 'O' && algebra_ != 'b')
    throw DomainError("unsupported-spec: whittaker algebra must be 'O' or 'b'");
  if (level_ < 0)
    throw DomainError("unsupported-spec: whittaker level must be >= 0");
  check_value_keys(u_, level_, 2 * level_ + 2, "U");
  if (algebra_ == 'b') {
    check_value_keys(v_, level_, 2 * level_, "V");
  } else if (!v_.empty()) {
    throw DomainError("unsupported-spec: the one-family algebra has no V values");
  }
}

Rat WhittakerFn::u_value(long m) const {
  if (m < level_)
    throw DomainError("symbol-below-level: U:" + std::to_string(m) +
                      " lies below level " + std::to_string(level_));
  if (m <= 2 * level_ + 2) return u_.at(m);
  Rat f(1);
  while (m > 2 * level_ + 2) {
    m -= 2;
    f *= Rat(4);
  }
  return f * u_.at(m);
}

Rat WhittakerFn::v_value(long m) const {
  if (algebra_ != 'b')
    throw DomainError("invalid-symbol: the one-family algebra has no V values");
  if (m < level_)
    throw DomainError("symbol-below-level: V:" + std::to_string(m) +
                      " lies below level " + std::to_string(level_));
  if (m <= 2 * level_) return v_.at(m);
  return Rat(0);
}

Rat WhittakerFn::value(const BasisSymbol& s) const {
  if (s.family == Family::U) return u_value(s.index);
  if (s.family == Family::V) return v_value(s.index);
  throw DomainError("invalid-symbol: whittaker function has no value on " +
                    symbol_str(s));
}

std::optional<long> WhittakerFn::kappa() const {
  if (algebra_ != 'b')
    throw DomainError("unsupported-spec: kappa needs the two-family algebra");
  if (level_ == 0) return 0;
  if (!v_.at(2 * level_).is_zero()) return 2 * level_;
  if (!v_.at(2 * level_ - 1).is_zero()) return 2 * level_ - 1;
  return std::nullopt;
}

bool WhittakerFn::degenerate() const {
  if (algebra_ == 'b') {
    if (level_ == 0) return v_.at(0).is_zero();
    return v_.at(2 * level_).is_zero() && v_.at(2 * level_ - 1).is_zero();
  }
  bool even_dead = u_.at(2 * level_ + 2) == Rat(4) * u_.at(2 * level_);
  if (level_ == 0) return even_dead;
  bool odd_dead = u_.at(2 * level_ + 1) == Rat(4) * u_.at(2 * level_ - 1);
  return even_dead && odd_dead;
}

std::string WhittakerFn::str() const {
  std::ostringstream os;
  os << "whittaker_" << algebra_ << "(level=" << level_;
  os << ", U={";
  bool first = true;
  for (const auto& [k, v] : u_) {
    if (!first) os << ", ";
    first = false;
    os << k << "->" << v.str();
  }
  os << "}";
  if (algebra_ == 'b') {
    os << ", V={";
    first = true;
    for (const auto& [k, v] : v_) {
      if (!first) os << ", ";
      first = false;
      os << k << "->" << v.str();
    }
    os << "}";
  }
  os << ")";
  return os.str();
}

std::string mod_kind_str(ModKind k) {
  switch (k) {
    case ModKind::tensor_density: return "tensor_density";
    case ModKind::pb: return "pb";
    case ModKind::pb_tilde: return "pb_tilde";
    case ModKind::verma_vir: return "verma_vir";
    case ModKind::verma_bms: return "verma_bms";
    case ModKind::massive: return "massive";
    case ModKind::omega: return "omega";
    case ModKind::whittaker_O: return "whittaker_O";
    case ModKind::whittaker_b: return "whittaker_b";
    case ModKind::quasi_whittaker_bms: return "quasi_whittaker_bms";
  }
  throw InternalError("unhandled module kind");
}

ModuleSpec ModuleSpec::tensor_density(const Rat& a, const Rat& b) {
  return {ModKind::tensor_density, {a, b}, std::nullopt};
}

ModuleSpec ModuleSpec::pb(const Rat& b) {
  return {ModKind::pb, {b}, std::nullopt};
}

ModuleSpec ModuleSpec::pb_tilde(const Rat& b) {
  return {ModKind::pb_tilde, {b}, std::nullopt};
}

ModuleSpec ModuleSpec::verma_vir(const Rat& h, const Rat& c) {
  return {ModKind::verma_vir, {h, c}, std::nullopt};
}

ModuleSpec ModuleSpec::verma_bms(const Rat& h_l, const Rat& h_m, const Rat& c_l,
                                 const Rat& c_m) {
  return {ModKind::verma_bms, {h_l, h_m, c_l, c_m}, std::nullopt};
}

ModuleSpec ModuleSpec::massive(const Rat& big_m, const Rat& big_s,
                               const Rat& c_l, const Rat& c_m) {
  return {ModKind::massive, {big_m, big_s, c_l, c_m}, std::nullopt};
}

ModuleSpec ModuleSpec::omega(const Rat& lambda, const Rat& a) {
  if (lambda.is_zero())
    throw DomainError("unsupported-spec: omega requires lambda != 0");
  return {ModKind::omega, {lambda, a}, std::nullopt};
}

ModuleSpec ModuleSpec::whittaker_O(WhittakerFn fn) {
  if (fn.algebra() != 'O')
    throw DomainError("unsupported-spec: whittaker_O needs an 'O' function");
  return {ModKind::whittaker_O, {}, std::move(fn)};
}

ModuleSpec ModuleSpec::whittaker_b(WhittakerFn fn) {
  if (fn.algebra() != 'b')
    throw DomainError("unsupported-spec: whittaker_b needs a 'b' function");
  return {ModKind::whittaker_b, {}, std::move(fn)};
}

ModuleSpec ModuleSpec::quasi_whittaker_bms(const Rat& big_m, const Rat& c_l,
                                           const Rat& c_m) {
  return {ModKind::quasi_whittaker_bms, {big_m, c_l, c_m}, std::nullopt};
}

AlgebraId ModuleSpec::acting_algebra() const {
  switch (kind) {
    case ModKind::tensor_density: return {AlgName::witt, {}};
    case ModKind::pb:
    case ModKind::pb_tilde: return {AlgName::O, {}};
    case ModKind::verma_vir:
    case ModKind::omega: return {AlgName::virasoro, {}};
    case ModKind::verma_bms:
    case ModKind::massive:
    case ModKind::quasi_whittaker_bms: return {AlgName::bms3, {}};
    case ModKind::whittaker_O:
    case ModKind::whittaker_b: return {AlgName::b_UV, {}};
  }
  throw InternalError("unhandled module kind");
}

std::string ModuleSpec::str() const {
  static const char* names[][4] = {
      {"a", "b", nullptr, nullptr},        // tensor_density
      {"b", nullptr, nullptr, nullptr},    // pb
      {"b", nullptr, nullptr, nullptr},    // pb_tilde
      {"h", "c", nullptr, nullptr},        // verma_vir
      {"h_L", "h_M", "c_L", "c_M"},        // verma_bms
      {"M", "s", "c_L", "c_M"},            // massive
      {"lambda", "a", nullptr, nullptr},   // omega
      {nullptr, nullptr, nullptr, nullptr},
      {nullptr, nullptr, nullptr, nullptr},
      {"M", "c_L", "c_M", nullptr},        // quasi_whittaker_bms
  };
  std::ostringstream os;
  os << mod_kind_str(kind) << "(";
  if (fn) {
    os << fn->str();
  } else {
    const auto* nm = names[static_cast<int>(kind)];
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) os << ", ";
      os << nm[i] << "=" << params[i].str();
    }
  }
  os << ")";
  return os.str();
}

Rat ModVector::coeff(const ModLabel& l) const {
  auto it = terms_.find(l);
  return it == terms_.end() ? Rat(0) : it->second;
}

void ModVector::add_term(const ModLabel& l, const Rat& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(l, c);
  if (!fresh && (it->second += c, it->second.is_zero())) terms_.erase(it);
}

long ModVector::max_word_length() const {
  long m = 0;
  for (const auto& [l, c] : terms_) m = std::max(m, l.word.length());
  return m;
}

ModVector ModVector::operator-() const {
  ModVector out;
  for (const auto& [l, c] : terms_) out.terms_.emplace(l, -c);
  return out;
}

ModVector& ModVector::operator+=(const ModVector& o) {
  for (const auto& [l, c] : o.terms_) add_term(l, c);
  return *this;
}

ModVector& ModVector::operator-=(const ModVector& o) {
  for (const auto& [l, c] : o.terms_) add_term(l, -c);
  return *this;
}

ModVector operator*(const Rat& c, const ModVector& v) {
  ModVector out;
  if (c.is_zero()) return out;
  for (const auto& [l, cv] : v.terms_) out.terms_.emplace(l, c * cv);
  return out;
}

ModVector mod_cyclic(const ModuleSpec& spec) {
  ModVector out;
  switch (spec.kind) {
    case ModKind::tensor_density:
    case ModKind::omega:
      out.add_term(ModLabel{}, Rat(1));
      break;
    case ModKind::pb:
      out.add_term(ModLabel{{}, 0}, Rat(1));
      break;
    case ModKind::pb_tilde:
      out.add_term(ModLabel{{}, 1}, Rat(1));
      break;
    default:
      out.add_term(ModLabel{}, Rat(1));
      break;
  }
  return out;
}

ModVector mod_basis(const ModuleSpec& spec, const ModLabel& label) {
  ModLabel l = label;
  Rat sign(1);
  if (spec.kind == ModKind::pb && l.index < 0) l.index = -l.index;
  if (spec.kind == ModKind::pb_tilde) {
    if (l.index == 0 && l.word.factors.empty()) return {};
    if (l.index < 0) {
      l.index = -l.index;
      sign = Rat(-1);
    }
  }
  validate_label(spec, l);
  ModVector out;
  out.add_term(l, sign);
  return out;
}

ModVector mod_word(const ModuleSpec& spec,
                   const std::vector<std::pair<Family, long>>& factors) {
  if (!is_induced(spec.kind))
    throw DomainError("unsupported-spec: words label the induced modules");
  ModuleEngine engine(spec);
  return engine.reduce(
      uea_word(spec.acting_algebra(), factors, induced_block(spec)));
}

std::string mod_label_str(const ModuleSpec& spec, const ModLabel& l) {
  switch (spec.kind) {
    case ModKind::tensor_density:
      return "I:" + std::to_string(l.index);
    case ModKind::pb:
      return "P:" + std::to_string(l.index);
    case ModKind::pb_tilde:
      return "Pt:" + std::to_string(l.index);
    case ModKind::omega:
      return l.index == 0 ? "1" : "X^" + std::to_string(l.index);
    default:
      return l.word.str();
  }
}

std::string mod_str(const ModuleSpec& spec, const ModVector& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [l, c] : v.terms()) {
    if (!first) os << " + ";
    first = false;
    os << c.str() << "*" << mod_label_str(spec, l);
  }
  return os.str();
}

namespace {

long parse_long(const std::string& s) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw DomainError("invalid-label: bad integer " + s);
    return v;
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
    throw DomainError("invalid-label: bad integer " + s);
  }
}

ModLabel parse_label(const ModuleSpec& spec, const std::string& text) {
  switch (spec.kind) {
    case ModKind::tensor_density:
    case ModKind::pb:
    case ModKind::pb_tilde: {
      std::string prefix = spec.kind == ModKind::pb_tilde ? "Pt:"
                           : spec.kind == ModKind::pb    ? "P:"
                                                         : "I:";
      if (text.rfind(prefix, 0) != 0)
        throw DomainError("invalid-label: expected " + prefix + "<n>, got " + text);
      return ModLabel{{}, parse_long(text.substr(prefix.size()))};
    }
    case ModKind::omega: {
      if (text == "1") return ModLabel{};
      if (text.rfind("X^", 0) != 0)
        throw DomainError("invalid-label: expected X^<k>, got " + text);
      return ModLabel{{}, parse_long(text.substr(2))};
    }
    default: {
      if (text == "1") return ModLabel{};
      Monomial word;
      std::size_t pos = 0;
      while (pos <= text.size()) {
        std::size_t dot = text.find('.', pos);
        std::string piece =
            text.substr(pos, dot == std::string::npos ? dot : dot - pos);
        word.factors.push_back(symbol_parse(piece));
        if (dot == std::string::npos) break;
        pos = dot + 1;
      }
      return ModLabel{word, 0};
    }
  }
}

}  // namespace

ModVector mod_parse(const ModuleSpec& spec, const std::string& text) {
  ModVector out;
  if (text == "0") return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t sep = text.find(" + ", pos);
    std::string piece =
        text.substr(pos, sep == std::string::npos ? sep : sep - pos);
    std::size_t star = piece.find('*');
    if (star == std::string::npos)
      throw DomainError("invalid-label: expected coeff*label, got " + piece);
    Rat c = Rat::parse(piece.substr(0, star));
    out += c * mod_basis(spec, parse_label(spec, piece.substr(star + 1)));
    if (sep == std::string::npos) break;
    pos = sep + 3;
  }
  return out;
}

namespace {

// Free-generator alphabet of an induced kind within the weight window, in
// normal word order.
std::vector<BasisSymbol> free_alphabet(const ModuleSpec& spec, long wb) {
  std::vector<BasisSymbol> out;
  switch (spec.kind) {
    case ModKind::verma_vir:
      for (long k = -1; k >= -wb; --k) out.push_back(sym(Family::L, k));
      break;
    case ModKind::verma_bms:
      for (long k = -1; k >= -wb; --k) out.push_back(sym(Family::L, k));
      for (long k = -1; k >= -wb; --k) out.push_back(sym(Family::M, k));
      break;
    case ModKind::massive:
      for (long k = wb; k >= -wb; --k)
        if (k != 0) out.push_back(sym(Family::L, k));
      break;
    case ModKind::quasi_whittaker_bms:
      for (long k = wb; k >= -wb; --k) out.push_back(sym(Family::L, k));
      break;
    case ModKind::whittaker_O:
      for (long k = spec.fn->level() - 1; k >= -1; --k)
        out.push_back(sym(Family::U, k));
      break;
    case ModKind::whittaker_b:
      for (long k = spec.fn->level() - 1; k >= -1; --k)
        out.push_back(sym(Family::U, k));
      for (long k = spec.fn->level() - 1; k >= -1; --k)
        out.push_back(sym(Family::V, k));
      break;
    default:
      throw InternalError("alphabet requested for a non-induced kind");
  }
  return out;
}

void enumerate_words(const std::vector<BasisSymbol>& alphabet, std::size_t from,
                     long wb, long lb, std::vector<BasisSymbol>& cur,
                     std::vector<ModLabel>& out) {
  out.push_back(ModLabel{Monomial{cur}, 0});
  if (static_cast<long>(cur.size()) >= lb) return;
  for (std::size_t i = from; i < alphabet.size(); ++i) {
    long cost = alphabet[i].index < 0 ? -alphabet[i].index : alphabet[i].index;
    if (cost > wb) continue;
    cur.push_back(alphabet[i]);
    enumerate_words(alphabet, i, wb - cost, lb, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<ModLabel> mod_basis_window(const ModuleSpec& spec, long weight_bound,
                                       long length_bound) {
  if (weight_bound < 0 || length_bound < 0)
    throw DomainError("invalid-label: window bounds must be >= 0");
  std::vector<ModLabel> out;
  if (is_induced(spec.kind)) {
    auto alphabet = free_alphabet(spec, weight_bound);
    std::vector<BasisSymbol> cur;
    enumerate_words(alphabet, 0, weight_bound, length_bound, cur, out);
  } else {
    long lo = spec.kind == ModKind::tensor_density ? -weight_bound
              : spec.kind == ModKind::pb_tilde     ? 1
                                                   : 0;
    for (long k = lo; k <= weight_bound; ++k) out.push_back(ModLabel{{}, k});
  }
  std::sort(out.begin(), out.end(), [](const ModLabel& a, const ModLabel& b) {
    return ModLabelLess{}(a, b);
  });
  return out;
}

AlgElem hat_to_bms(const AlgElem& x) {
  AlgebraId bms{AlgName::bms3, {}};
  AlgElem out;
  for (const auto& [s, c] : x.terms()) {
    switch (s.family) {
      case Family::L:
      case Family::M:
      case Family::C_L:
      case Family::C_M:
        alg_insert(bms, out, s.family, s.index, c);
        break;
      case Family::O:
        alg_insert(bms, out, Family::L, s.index, c);
        alg_insert(bms, out, Family::L, -s.index, -c);
        break;
      case Family::Ohat:
        alg_insert(bms, out, Family::L, s.index, c);
        alg_insert(bms, out, Family::L, -s.index, c);
        break;
      case Family::P:
        alg_insert(bms, out, Family::M, s.index, c);
        alg_insert(bms, out, Family::M, -s.index, c);
        break;
      case Family::Phat:
        alg_insert(bms, out, Family::M, s.index, c);
        alg_insert(bms, out, Family::M, -s.index, -c);
        break;
      default:
        throw DomainError("invalid-symbol: " + symbol_str(s) +
                          " has no L/M coordinates");
    }
  }
  return out;
}

ModuleEngine::ModuleEngine(ModuleSpec spec)
    : spec_(std::move(spec)), ctx_(spec_.acting_algebra()) {
  if (is_induced(spec_.kind)) {
    block_ = induced_block(spec_);
    char_ = induced_char(spec_);
  }
}

ModVector ModuleEngine::reduce(const UEAElem& u) const {
  if (!is_induced(spec_.kind))
    throw DomainError("unsupported-spec: reduction needs an induced module");
  UEAElem no = normal_order(u);
  ModVector out;
  for (const auto& [word, c] : no.terms()) {
    Rat coeff = c;
    std::size_t cut = word.factors.size();
    for (std::size_t i = 0; i < word.factors.size(); ++i) {
      if (block_(word.factors[i]) == 1) {
        cut = i;
        break;
      }
    }
    for (std::size_t i = cut; i < word.factors.size() && !coeff.is_zero(); ++i)
      coeff *= char_(word.factors[i]);
    if (coeff.is_zero()) continue;
    Monomial prefix{std::vector<BasisSymbol>(word.factors.begin(),
                                             word.factors.begin() + cut)};
    out.add_term(ModLabel{prefix, 0}, coeff);
  }
  return out;
}

ModVector ModuleEngine::act_induced(const AlgElem& x, const ModVector& v) const {
  AlgElem xn = spec_.kind == ModKind::massive ? hat_to_bms(x) : x;
  if (spec_.kind == ModKind::whittaker_O) {
    for (const auto& [s, c] : xn.terms())
      if (s.family == Family::V)
        throw DomainError(
            "invalid-symbol: the one-family module admits only the U family");
  }
  AlgElem xc;
  for (const auto& [s, c] : xn.terms()) alg_insert(ctx_, xc, s.family, s.index, c);
  if (xc.is_zero()) return {};
  UEAElem xe = uea_embed(ctx_, xc, block_);
  UEAElem ve(ctx_, block_);
  for (const auto& [l, c] : v.terms()) {
    validate_label(spec_, l);
    ve.add_term(l.word, c);
  }
  return reduce(xe * ve);
}

ModVector ModuleEngine::act_tensor_density(const AlgElem& x,
                                           const ModVector& v) const {
  Rat a = spec_.params[0], b = spec_.params[1];
  ModVector out;
  for (const auto& [s, c] : x.terms()) {
    if (s.family != Family::L)
      throw DomainError("invalid-symbol: tensor densities admit only the L family");
    long n = s.index;
    for (const auto& [l, cv] : v.terms()) {
      validate_label(spec_, l);
      long m = l.index;
      out.add_term(ModLabel{{}, n + m}, -c * cv * (a + b * Rat(n) + Rat(m)));
    }
  }
  return out;
}

ModVector ModuleEngine::act_pb(const AlgElem& x, const ModVector& v,
                               bool tilde) const {
  Rat b = spec_.params[0];
  ModVector out;
  auto add = [&](long idx, Rat c) {
    if (c.is_zero()) return;
    if (tilde) {
      if (idx == 0) return;
      if (idx < 0) {
        idx = -idx;
        c = -c;
      }
    } else if (idx < 0) {
      idx = -idx;
    }
    out.add_term(ModLabel{{}, idx}, c);
  };
  for (const auto& [s, c] : x.terms()) {
    if (s.family != Family::O || s.index < 1)
      throw DomainError("invalid-symbol: this module admits only the O family");
    long n = s.index;
    for (const auto& [l, cv] : v.terms()) {
      validate_label(spec_, l);
      long m = l.index;
      Rat plus = -(b * Rat(n) + Rat(m));
      Rat minus = b * Rat(n) - Rat(m);
      add(n + m, c * cv * plus);
      add(n - m, tilde ? c * cv * minus : -c * cv * minus);
    }
  }
  return out;
}

ModVector ModuleEngine::act_omega(const AlgElem& x, const ModVector& v) const {
  Rat lam = spec_.params[0], a = spec_.params[1];
  std::map<long, Rat> f;
  for (const auto& [l, c] : v.terms()) {
    validate_label(spec_, l);
    f.emplace(l.index, c);
  }
  std::map<long, Rat> acc;
  auto add_poly = [&acc](const std::map<long, Rat>& p, const Rat& c) {
    for (const auto& [d, pc] : p) {
      Rat t = c * pc;
      if (t.is_zero()) continue;
      auto [it, fresh] = acc.emplace(d, t);
      if (!fresh && (it->second += t, it->second.is_zero())) acc.erase(it);
    }
  };
  for (const auto& [s, c] : x.terms()) {
    switch (s.family) {
      case Family::C:
        break;
      case Family::L:
        add_poly(poly_shift_mul(f, s.index, a * Rat(s.index)),
                 c * lam.pow(s.index));
        break;
      case Family::O:
        if (s.index < 1)
          throw DomainError("invalid-symbol: O indices are >= 1");
        add_poly(poly_shift_mul(f, s.index, a * Rat(s.index)),
                 c * lam.pow(s.index));
        add_poly(poly_shift_mul(f, -s.index, -a * Rat(s.index)),
                 -c * lam.pow(-s.index));
        break;
      default:
        throw DomainError("invalid-symbol: omega admits only L, C, and O");
    }
  }
  ModVector out;
  for (const auto& [d, c] : acc) out.add_term(ModLabel{{}, d}, c);
  return out;
}

ModVector ModuleEngine::act(const AlgElem& x, const ModVector& v) const {
  if (x.is_zero() || v.is_zero()) return {};
  switch (spec_.kind) {
    case ModKind::tensor_density: return act_tensor_density(x, v);
    case ModKind::pb: return act_pb(x, v, false);
    case ModKind::pb_tilde: return act_pb(x, v, true);
    case ModKind::omega: return act_omega(x, v);
    default: return act_induced(x, v);
  }
}

ModVector ModuleEngine::act(const BasisSymbol& s, const ModVector& v) const {
  AlgElem x;
  x.add_raw(s, Rat(1));
  return act(x, v);
}

ModVector act(const ModuleSpec& spec, const AlgElem& x, const ModVector& v) {
  return ModuleEngine(spec).act(x, v);
}

Rat whittaker_value(const WhittakerFn& fn, const BasisSymbol& sym) {
  return fn.value(sym);
}

MassiveAltCoords::MassiveAltCoords(const ModuleSpec& spec) : engine_(spec) {
  if (spec.kind != ModKind::massive)
    throw DomainError(
        "unsupported-spec: alternative coordinates exist for the massive module");
}

ModVector MassiveAltCoords::expand(const Monomial& alt_word) {
  AlgebraId bms = engine_.spec().acting_algebra();
  PbwBlockFn block = induced_block(engine_.spec());
  UEAElem prod = uea_one(bms, block);
  for (const auto& s : alt_word.factors) {
    if ((s.family != Family::O && s.family != Family::Ohat) || s.index < 1)
      throw DomainError("invalid-label: alternative words use O/Ohat with index >= 1");
    AlgElem e;
    alg_insert(bms, e, Family::L, s.index, Rat(1));
    alg_insert(bms, e, Family::L, -s.index,
               s.family == Family::Ohat ? Rat(1) : Rat(-1));
    prod = prod * uea_embed(bms, e, block);
  }
  return engine_.reduce(prod);
}

void MassiveAltCoords::ensure(long length_bound, long weight_bound) {
  if (length_bound <= covered_length_ && weight_bound <= covered_weight_) return;
  long lb = std::max(length_bound, covered_length_);
  long wb = std::max(weight_bound, covered_weight_);
  for (const auto& w : massive_alt_window(wb, lb)) {
    if (inserted_.count(w)) continue;
    auto row = table_.make_vec();
    ModVector ex = expand(w);
    for (const auto& [l, c] : ex.terms()) row.emplace(Key{0, l}, c);
    row.emplace(Key{1, ModLabel{w, 0}}, Rat(-1));
    table_.insert(std::move(row));
    inserted_.insert(w);
  }
  covered_length_ = lb;
  covered_weight_ = wb;
}

std::map<Monomial, Rat, MonomialLess> MassiveAltCoords::coords(
    const ModVector& v) {
  long lb = 0, wb = 0;
  for (const auto& [l, c] : v.terms()) {
    lb = std::max(lb, l.word.length());
    wb = std::max(wb, mag_weight(l.word));
  }
  ensure(lb, wb);
  auto vv = table_.make_vec();
  for (const auto& [l, c] : v.terms()) vv.emplace(Key{0, l}, c);
  auto res = table_.reduce(std::move(vv));
  std::map<Monomial, Rat, MonomialLess> out;
  for (const auto& [k, c] : res) {
    if (k.first == 0)
      throw InternalError("massive basis change escaped its window");
    out.emplace(k.second.word, c);
  }
  return out;
}

std::vector<Monomial> massive_alt_window(long weight_bound, long length_bound) {
  std::vector<BasisSymbol> alphabet;
  for (long k = weight_bound; k >= 1; --k) alphabet.push_back(sym(Family::O, k));
  for (long k = weight_bound; k >= 1; --k)
    alphabet.push_back(sym(Family::Ohat, k));
  std::vector<ModLabel> labels;
  std::vector<BasisSymbol> cur;
  enumerate_words(alphabet, 0, weight_bound, length_bound, cur, labels);
  std::vector<Monomial> out;
  out.reserve(labels.size());
  for (auto& l : labels) out.push_back(std::move(l.word));
  std::sort(out.begin(), out.end(),
            [](const Monomial& a, const Monomial& b) { return MonomialLess{}(a, b); });
  return out;
}

std::vector<AlgElem> default_closure_generators(const ModuleSpec& spec,
                                                long weight_bound) {
  std::vector<AlgElem> out;
  if (spec.kind == ModKind::massive) {
    AlgebraId hat{AlgName::bcca_hat, {}};
    for (long k = 1; k <= weight_bound; ++k)
      out.push_back(alg_sym(hat, Family::O, k));
    for (long k = 0; k <= weight_bound; ++k)
      out.push_back(alg_sym(hat, Family::P, k));
    out.push_back(alg_sym(hat, Family::C_M));
    return out;
  }
  AlgebraId ctx = spec.acting_algebra();
  for (const auto& s : basis_window(ctx, weight_bound)) {
    if (spec.kind == ModKind::whittaker_O && s.family == Family::V) continue;
    AlgElem e;
    e.add_raw(s, Rat(1));
    out.push_back(e);
  }
  return out;
}

namespace {

bool label_exceeds(const ModuleSpec& spec, const ModLabel& l, long wb, long lb) {
  if (is_induced(spec.kind))
    return mag_weight(l.word) > wb || l.word.length() > lb;
  long mag = l.index < 0 ? -l.index : l.index;
  return mag > wb;
}

bool vector_exceeds(const ModuleSpec& spec, const ModVector& v, long wb,
                    long lb) {
  for (const auto& [l, c] : v.terms())
    if (label_exceeds(spec, l, wb, lb)) return true;
  return false;
}

}  // namespace

ClosureReport submodule_closure(const ModuleSpec& spec,
                                const std::vector<ModVector>& seeds,
                                long weight_bound, long length_bound,
                                const std::vector<AlgElem>& generators) {
  if (weight_bound < 1 || length_bound < 1)
    throw DomainError("invalid-label: closure bounds must be >= 1");
  ModuleEngine engine(spec);
  EchelonSpace<ModLabel, ModLabelLess> space;
  std::vector<ModVector> pending;
  for (const auto& seed : seeds) {
    if (seed.is_zero()) continue;
    for (const auto& [l, c] : seed.terms()) validate_label(spec, l);
    if (vector_exceeds(spec, seed, weight_bound, length_bound))
      throw DomainError("invalid-label: seed lies outside the closure window");
    if (space.insert(seed.terms())) pending.push_back(seed);
  }
  ClosureReport report;
  while (!pending.empty()) {
    ModVector v = std::move(pending.back());
    pending.pop_back();
    for (const auto& g : generators) {
      ModVector w = engine.act(g, v);
      if (w.is_zero()) continue;
      if (vector_exceeds(spec, w, weight_bound, length_bound)) {
        report.truncated = true;
        continue;
      }
      if (space.insert(w.terms())) pending.push_back(std::move(w));
    }
  }
  report.stabilized = !report.truncated;
  report.rank = space.rank();
  report.cyclic_in_span = space.contains(mod_cyclic(spec).terms());
  for (const auto& row : space.rows()) {
    ModVector rv;
    for (const auto& [l, c] : row) rv.add_term(l, c);
    report.rows.push_back(std::move(rv));
  }
  return report;
}

ClosureReport submodule_closure(const ModuleSpec& spec,
                                const std::vector<ModVector>& seeds,
                                long weight_bound, long length_bound) {
  return submodule_closure(spec, seeds, weight_bound, length_bound,
                           default_closure_generators(spec, weight_bound));
}

std::optional<ModVector> reducibility_witness(const ModuleSpec& spec) {
  switch (spec.kind) {
    case ModKind::whittaker_b: {
      if (!spec.fn->degenerate()) return std::nullopt;
      long n = spec.fn->level();
      ModVector w;
      w.add_term(ModLabel{Monomial{{sym(Family::V, n == 0 ? -1 : n - 1)}}, 0},
                 Rat(1));
      return w;
    }
    case ModKind::whittaker_O: {
      if (!spec.fn->degenerate()) return std::nullopt;
      long n = spec.fn->level();
      ModVector w;
      if (n == 0) {
        w.add_term(ModLabel{}, spec.fn->u_value(1));
        w.add_term(ModLabel{Monomial{{sym(Family::U, -1)}}, 0}, Rat(-4));
      } else {
        w.add_term(ModLabel{Monomial{{sym(Family::U, n - 1)}}, 0}, Rat(1));
      }
      return w;
    }
    case ModKind::omega: {
      if (!spec.params[1].is_zero()) return std::nullopt;
      ModVector w;
      w.add_term(ModLabel{{}, 1}, Rat(1));
      return w;
    }
    default:
      return std::nullopt;
  }
}

namespace {

ProbeResult probe_refusal(const std::string& detail, const ModVector& witness) {
  ProbeResult r;
  r.status = ProbeStatus::refused;
  r.detail = detail;
  r.witness = witness;
  return r;
}

bool is_cyclic_multiple(const ModVector& v, Rat& coeff_out) {
  if (v.terms().size() != 1) return false;
  const auto& [l, c] = *v.terms().begin();
  if (!l.word.factors.empty() || l.index != 0) return false;
  coeff_out = c;
  return true;
}

ProbeResult probe_whittaker_b(const ModuleSpec& spec, const ModVector& v,
                              long length_bound) {
  const WhittakerFn& fn = *spec.fn;
  ModuleEngine engine(spec);
  AlgebraId ctx = spec.acting_algebra();
  ProbeResult res;
  if (is_cyclic_multiple(v, res.final_coeff)) {
    res.status = ProbeStatus::reduced;
    res.final_vector = v;
    return res;
  }
  if (fn.degenerate())
    return probe_refusal(
        "degenerate character: the top V-values vanish and the module is "
        "reducible",
        *reducibility_witness(spec));
  long kappa = *fn.kappa();
  Rat mu_kappa = fn.v_value(kappa);
  ModVector cur = v;
  long guard = 4 * length_bound + 16;
  while (guard-- > 0) {
    if (is_cyclic_multiple(cur, res.final_coeff)) {
      res.status = ProbeStatus::reduced;
      res.final_vector = cur;
      return res;
    }
    long max_um1 = 0, min_u = 0, min_v = 0;
    bool any_u0 = false, any_u = false, any_v = false;
    for (const auto& [l, c] : cur.terms()) {
      max_um1 = std::max(max_um1, count_factor(l.word, Family::U, -1));
      if (count_factor(l.word, Family::U, 0) > 0) any_u0 = true;
      for (const auto& s : l.word.factors) {
        if (s.family == Family::U) {
          min_u = any_u ? std::min(min_u, s.index) : s.index;
          any_u = true;
        } else if (s.family == Family::V) {
          min_v = any_v ? std::min(min_v, s.index) : s.index;
          any_v = true;
        }
      }
    }
    BasisSymbol op;
    Rat shift;
    if (max_um1 > 0) {
      op = sym(Family::V, kappa + max_um1);
      shift = fn.v_value(kappa + max_um1);
    } else if (any_u0) {
      op = sym(Family::V, kappa);
      shift = mu_kappa;
    } else if (any_u) {
      op = sym(Family::V, kappa - min_u);
      shift = fn.v_value(kappa - min_u);
    } else if (any_v) {
      op = sym(Family::U, kappa - min_v);
      shift = fn.u_value(kappa - min_v);
    } else {
      throw InternalError("whittaker probe ran out of stages");
    }
    ModVector next = engine.act(op, cur) - shift * cur;
    res.steps.push_back({alg_sym(ctx, op.family, op.index), shift});
    if (next.is_zero()) {
      res.status = ProbeStatus::failed;
      res.detail = "step " + std::to_string(res.steps.size()) + " (" +
                   symbol_str(op) + " - " + shift.str() +
                   ") annihilated the vector";
      return res;
    }
    cur = std::move(next);
  }
  res.status = ProbeStatus::failed;
  res.detail = "step budget exhausted";
  return res;
}

ProbeResult probe_whittaker_O(const ModuleSpec& spec, const ModVector& v,
                              long length_bound) {
  const WhittakerFn& fn = *spec.fn;
  long n = fn.level();
  ModuleEngine engine(spec);
  AlgebraId ctx = spec.acting_algebra();
  ProbeResult res;
  if (is_cyclic_multiple(v, res.final_coeff)) {
    res.status = ProbeStatus::reduced;
    res.final_vector = v;
    return res;
  }
  if (fn.degenerate())
    return probe_refusal(
        "degenerate character: the closure rule extends below its usual range "
        "and the module is reducible",
        *reducibility_witness(spec));
  bool even_alive = fn.u_value(2 * n + 2) != Rat(4) * fn.u_value(2 * n);
  bool odd_alive =
      n >= 1 && fn.u_value(2 * n + 1) != Rat(4) * fn.u_value(2 * n - 1);
  long m_cap = 2 * n + 2 + 2 * length_bound;
  std::function<bool(const ModVector&, long)> dfs = [&](const ModVector& cur,
                                                        long depth) {
    if (is_cyclic_multiple(cur, res.final_coeff)) {
      res.final_vector = cur;
      return true;
    }
    if (depth > length_bound + 2) return false;
    long top = cur.max_word_length();
    bool seen = false;
    long qmin = 0;
    for (const auto& [l, c] : cur.terms()) {
      if (l.word.length() != top) continue;
      for (const auto& s : l.word.factors) {
        qmin = seen ? std::min(qmin, s.index) : s.index;
        seen = true;
      }
    }
    std::vector<long> candidates;
    std::set<long> used;
    auto push = [&](long m) {
      if (m >= n && m <= m_cap && used.insert(m).second) candidates.push_back(m);
    };
    if (even_alive) push(2 * n - qmin);
    if (odd_alive && qmin <= n - 2) push(2 * n - 1 - qmin);
    if (odd_alive && qmin == n - 1) push(n);
    for (long m = n; m <= m_cap; ++m) push(m);
    for (long m : candidates) {
      BasisSymbol op = sym(Family::U, m);
      Rat shift = fn.u_value(m);
      ModVector next = engine.act(op, cur) - shift * cur;
      if (next.is_zero()) continue;
      if (next.max_word_length() >= top) continue;
      res.steps.push_back({alg_sym(ctx, Family::U, m), shift});
      if (dfs(next, depth + 1)) return true;
      res.steps.pop_back();
    }
    return false;
  };
  if (dfs(v, 0)) {
    res.status = ProbeStatus::reduced;
    return res;
  }
  res.status = ProbeStatus::failed;
  res.detail = "no generator application lowers the maximal word length";
  return res;
}

ProbeResult probe_omega(const ModuleSpec& spec, const ModVector& v) {
  Rat lam = spec.params[0], a = spec.params[1];
  ModuleEngine engine(spec);
  for (const auto& [l, c] : v.terms()) validate_label(spec, l);
  long r = 0;
  for (const auto& [l, c] : v.terms()) r = std::max(r, l.index);
  ProbeResult res;
  if (r == 0) {
    res.status = ProbeStatus::reduced;
    res.final_vector = v;
    res.final_coeff = v.coeff(ModLabel{});
    return res;
  }
  ModVector x_seed;
  x_seed.add_term(ModLabel{{}, 1}, Rat(1));
  if (lam == Rat(1) || lam == Rat(-1))
    return probe_refusal(
        "degree filtration: no operator lowers the top degree when lambda is "
        "1 or -1",
        x_seed);
  if (a.is_zero())
    return probe_refusal(
        "a = 0: the image of every operator lies in X times the polynomial "
        "ring",
        *reducibility_witness(spec));
  long s = r + 2;
  Rat mu = lam * lam;
  std::vector<std::vector<Rat>> mat(2 * s, std::vector<Rat>(2 * s, Rat(0)));
  std::vector<Rat> rhs(2 * s, Rat(0));
  for (long i = 0; i < s; ++i) {
    for (long k = 1; k <= 2 * s; ++k) {
      mat[i][k - 1] = Rat(k).pow(i) * mu.pow(k);
      mat[s + i][k - 1] = Rat(k).pow(i);
    }
    if (i == r + 1) rhs[i] = Rat(1);
  }
  std::vector<Rat> t = gauss_solve(std::move(mat), std::move(rhs));
  AlgElem op;
  AlgebraId octx{AlgName::O, {}};
  for (long k = 1; k <= 2 * s; ++k)
    alg_insert(octx, op, Family::O, k, t[k - 1] * lam.pow(k));
  ModVector image = engine.act(op, v);
  Rat expect = a * v.coeff(ModLabel{{}, r});
  ModVector target = expect * mod_cyclic(spec);
  if (image != target) throw InternalError("omega probe lost exactness");
  res.status = ProbeStatus::reduced;
  res.steps.push_back({op, Rat(0)});
  res.final_vector = image;
  res.final_coeff = expect;
  return res;
}

}  // namespace

ProbeResult cyclicity_probe(const ModuleSpec& spec, const ModVector& v,
                            long length_bound) {
  if (v.is_zero())
    throw DomainError("invalid-label: the probe vector must be nonzero");
  for (const auto& [l, c] : v.terms()) validate_label(spec, l);
  switch (spec.kind) {
    case ModKind::whittaker_b:
      if (v.max_word_length() > length_bound)
        throw DomainError("invalid-label: vector exceeds the length bound");
      return probe_whittaker_b(spec, v, length_bound);
    case ModKind::whittaker_O:
      if (v.max_word_length() > length_bound)
        throw DomainError("invalid-label: vector exceeds the length bound");
      return probe_whittaker_O(spec, v, length_bound);
    case ModKind::omega:
      return probe_omega(spec, v);
    default:
      throw DomainError(
          "unsupported-spec: the cyclicity probe covers the whittaker and "
          "omega modules");
  }
}

ParityReport massive_parity_split(const Rat& big_m, const Rat& big_s,
                                  const Rat& c_l, const Rat& c_m, long window) {
  if (window < 1)
    throw DomainError("invalid-label: the parity window must be >= 1");
  ModuleSpec spec = ModuleSpec::massive(big_m, big_s, c_l, c_m);
  ModuleEngine engine(spec);
  MassiveAltCoords coords(spec);
  ParityReport report;
  report.window = window;
  AlgebraId hat{AlgName::bcca_hat, {}};
  std::vector<std::pair<std::string, AlgElem>> gens;
  for (long r = 0; r <= window; ++r)
    gens.emplace_back("P:" + std::to_string(r), alg_sym(hat, Family::P, r));
  for (long k = -1; k <= std::min(window - 2, 2L); ++k)
    gens.emplace_back("u:" + std::to_string(k + 2),
                      uv_from_OP(k + 2, Family::u));
  auto alt_words = massive_alt_window(window, window);
  report.parity_preserved = true;
  EchelonSpace<ModLabel, ModLabelLess> span;
  for (const auto& w : alt_words) {
    ModVector vw = coords.expand(w);
    span.insert(vw.terms());
    long par = count_ohat(w) % 2;
    for (const auto& [name, g] : gens) {
      if (!report.parity_preserved) break;
      ModVector y = engine.act(g, vw);
      if (y.is_zero()) continue;
      for (const auto& [mono, c] : coords.coords(y)) {
        if (count_ohat(mono) % 2 != par) {
          report.parity_preserved = false;
          report.counterexample = name + " on " + (w.factors.empty() ? "1" : w.str()) +
                                  " produced " +
                                  (mono.factors.empty() ? "1" : mono.str());
          break;
        }
      }
    }
  }
  report.classes_span = span.rank() == alt_words.size();
  report.pass = report.parity_preserved && report.classes_span;
  return report;
}

bool massive_ohat_iso_check(const Rat& big_m, const Rat& big_s, const Rat& c_l,
                            const Rat& c_m, long n, long weight_bound) {
  if (n < 1 || n > weight_bound)
    throw DomainError("invalid-label: need 1 <= n <= weight_bound");
  ModuleSpec spec = ModuleSpec::massive(big_m, big_s, c_l, c_m);
  ModuleEngine engine(spec);
  MassiveAltCoords coords(spec);
  AlgebraId hat{AlgName::bcca_hat, {}};
  long g_cap = std::min(weight_bound, 3L);
  std::vector<AlgElem> gens;
  for (long k = 1; k <= g_cap; ++k) gens.push_back(alg_sym(hat, Family::O, k));
  for (long k = 0; k <= g_cap; ++k) gens.push_back(alg_sym(hat, Family::P, k));
  gens.push_back(alg_sym(hat, Family::C_M));
  std::vector<BasisSymbol> alphabet;
  for (long k = weight_bound - n; k >= 1; --k)
    alphabet.push_back(sym(Family::O, k));
  std::vector<ModLabel> o_words;
  std::vector<BasisSymbol> cur;
  enumerate_words(alphabet, 0, weight_bound - n, weight_bound, cur, o_words);
  for (const auto& ow : o_words) {
    Monomial with_hat = ow.word;
    with_hat.factors.push_back(sym(Family::Ohat, n));
    ModVector va = coords.expand(with_hat);
    ModVector vb = coords.expand(ow.word);
    for (const auto& g : gens) {
      auto ca = coords.coords(engine.act(g, va));
      auto cb = coords.coords(engine.act(g, vb));
      std::map<Monomial, Rat, MonomialLess> stripped;
      for (const auto& [mono, c] : ca) {
        if (mono.factors.empty() ||
            mono.factors.back() != sym(Family::Ohat, n) ||
            count_ohat(mono) != 1)
          return false;
        Monomial m2 = mono;
        m2.factors.pop_back();
        stripped.emplace(std::move(m2), c);
      }
      if (stripped != cb) return false;
    }
  }
  return true;
}

FreenessReport restriction_freeness_check(const ModuleSpec& big,
                                          const AlgebraId& small_algebra,
                                          long weight_bound) {
  bool vir = big.kind == ModKind::verma_vir && small_algebra.name == AlgName::O;
  bool bms =
      big.kind == ModKind::verma_bms && small_algebra.name == AlgName::bcca_hat;
  if (!vir && !bms)
    throw DomainError(
        "unsupported-spec: freeness covers verma_vir over O and verma_bms over "
        "bcca_hat");
  if (weight_bound < 0)
    throw DomainError("invalid-label: the weight bound must be >= 0");
  ModuleEngine engine(big);
  AlgebraId ctx = big.acting_algebra();
  PbwBlockFn block = induced_block(big);
  std::vector<BasisSymbol> alphabet;
  for (long k = weight_bound; k >= 1; --k) alphabet.push_back(sym(Family::O, k));
  if (bms)
    for (long k = weight_bound; k >= 1; --k)
      alphabet.push_back(sym(Family::P, k));
  std::vector<ModLabel> words;
  std::vector<BasisSymbol> cur;
  enumerate_words(alphabet, 0, weight_bound, weight_bound, cur, words);
  std::vector<std::vector<Monomial>> by_weight(weight_bound + 1);
  for (auto& w : words) by_weight[mag_weight(w.word)].push_back(w.word);

  std::vector<std::size_t> expected(weight_bound + 1, 0);
  for (const auto& l : mod_basis_window(big, weight_bound, weight_bound)) {
    long d = mag_weight(l.word);
    if (d <= weight_bound) ++expected[d];
  }
  for (long d = 1; d <= weight_bound; ++d) expected[d] += expected[d - 1];

  FreenessReport report;
  report.weight_bound = weight_bound;
  EchelonSpace<ModLabel, ModLabelLess> space;
  report.free = true;
  for (long d = 0; d <= weight_bound; ++d) {
    for (const auto& w : by_weight[d]) {
      UEAElem prod = uea_one(ctx, block);
      for (const auto& s : w.factors) {
        AlgElem e;
        if (s.family == Family::O) {
          alg_insert(ctx, e, Family::L, s.index, Rat(1));
          alg_insert(ctx, e, Family::L, -s.index, Rat(-1));
        } else {
          alg_insert(ctx, e, Family::M, s.index, Rat(1));
          alg_insert(ctx, e, Family::M, -s.index, Rat(1));
        }
        prod = prod * uea_embed(ctx, e, block);
      }
      space.insert(engine.reduce(prod).terms());
    }
    report.cumulative_rank.push_back(space.rank());
    report.expected_rank.push_back(expected[d]);
    if (space.rank() != expected[d]) report.free = false;
  }
  return report;
}

std::vector<BasisSymbol> whittaker_annihilator(
    const AlgebraId& alg, const std::vector<Family>& x_families,
    const std::vector<Family>& ideal_families,
    const std::function<Rat(const BasisSymbol&)>& phi, long probe_window) {
  if (probe_window < 1)
    throw DomainError("invalid-label: the probe window must be >= 1");
  auto in = [](const std::vector<Family>& fams, Family f) {
    return std::find(fams.begin(), fams.end(), f) != fams.end();
  };
  auto phi_of = [&](const AlgElem& e) {
    Rat acc;
    for (const auto& [s, c] : e.terms()) acc += c * phi(s);
    return acc;
  };
  std::vector<BasisSymbol> ideal_syms, big_ideal_syms;
  for (const auto& s : basis_window(alg, probe_window + 1))
    if (in(ideal_families, s.family)) ideal_syms.push_back(s);
  for (const auto& s : basis_window(alg, 2 * probe_window + 2))
    if (in(ideal_families, s.family)) big_ideal_syms.push_back(s);
  for (const auto& y1 : ideal_syms) {
    AlgElem e1;
    e1.add_raw(y1, Rat(1));
    for (const auto& y2 : ideal_syms) {
      AlgElem e2;
      e2.add_raw(y2, Rat(1));
      if (!phi_of(bracket(alg, e1, e2)).is_zero())
        throw DomainError(
            "unsupported-spec: the character does not vanish on brackets "
            "inside the ideal");
    }
  }
  std::vector<BasisSymbol> out;
  for (const auto& x : basis_window(alg, probe_window)) {
    if (!in(x_families, x.family)) continue;
    AlgElem xe;
    xe.add_raw(x, Rat(1));
    bool ok = true;
    for (const auto& y : big_ideal_syms) {
      AlgElem ye;
      ye.add_raw(y, Rat(1));
      if (!phi_of(bracket(alg, xe, ye)).is_zero()) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return out;
}

std::function<Rat(const BasisSymbol&)> massive_quasi_character(const Rat& big_m,
                                                               const Rat& c_l,
                                                               const Rat& c_m) {
  return [big_m, c_l, c_m](const BasisSymbol& s) -> Rat {
    switch (s.family) {
      case Family::M: return s.index == 0 ? big_m : Rat(0);
      case Family::C_L: return c_l;
      case Family::C_M: return c_m;
      default:
        throw DomainError("invalid-symbol: character undefined on " +
                          symbol_str(s));
    }
  };
}

std::function<Rat(const BasisSymbol&)> massive_b_character(const Rat& big_m,
                                                           const Rat& c_m) {
  return [big_m, c_m](const BasisSymbol& s) -> Rat {
    switch (s.family) {
      case Family::P: return s.index == 0 ? Rat(2) * big_m : Rat(0);
      case Family::C_M: return c_m;
      default:
        throw DomainError("invalid-symbol: character undefined on " +
                          symbol_str(s));
    }
  };
}

bool omega_degree_filtration_check(const Rat& lambda, const Rat& a,
                                   long max_degree) {
  if (lambda != Rat(1) && lambda != Rat(-1))
    throw DomainError(
        "unsupported-spec: the degree filtration needs lambda in {1, -1}");
  ModuleSpec spec = ModuleSpec::omega(lambda, a);
  ModuleEngine engine(spec);
  AlgebraId octx{AlgName::O, {}};
  for (long d = 0; d <= max_degree; ++d) {
    ModVector xd;
    xd.add_term(ModLabel{{}, d}, Rat(1));
    for (long k = 1; k <= max_degree; ++k) {
      ModVector y = engine.act(alg_sym(octx, Family::O, k), xd);
      for (const auto& [l, c] : y.terms())
        if (l.index > d) return false;
    }
  }
  return true;
}

bool tensor_density_split_check(const Rat& b, long window) {
  if (window < 1)
    throw DomainError("invalid-label: the split window must be >= 1");
  ModuleSpec spec_i = ModuleSpec::tensor_density(Rat(0), b);
  ModuleSpec spec_p = ModuleSpec::pb(b);
  ModuleEngine ei(spec_i), ep(spec_p);
  AlgebraId witt{AlgName::witt, {}};
  AlgebraId octx{AlgName::O, {}};
  auto rho = [&](const ModVector& v) {
    ModVector out;
    for (const auto& [l, c] : v.terms())
      out += c * mod_basis(spec_p, ModLabel{{}, l.index});
    return out;
  };
  for (long n = 1; n <= window; ++n) {
    AlgElem on_w;
    alg_insert(witt, on_w, Family::L, n, Rat(1));
    alg_insert(witt, on_w, Family::L, -n, Rat(-1));
    AlgElem on_o = alg_sym(octx, Family::O, n);
    for (long m = -window; m <= window; ++m) {
      ModVector vi;
      vi.add_term(ModLabel{{}, m}, Rat(1));
      ModVector lhs = rho(ei.act(on_w, vi));
      ModVector rhs = ep.act(on_o, rho(vi));
      if (lhs != rhs) return false;
    }
    for (long m = 0; m <= window; ++m) {
      ModVector v_sym, v_anti;
      v_sym.add_term(ModLabel{{}, m}, Rat(1));
      v_sym.add_term(ModLabel{{}, -m}, Rat(1));
      if (m >= 1) {
        v_anti.add_term(ModLabel{{}, m}, Rat(1));
        v_anti.add_term(ModLabel{{}, -m}, Rat(-1));
      }
      ModVector ys = ei.act(on_w, v_sym);
      for (const auto& [l, c] : ys.terms())
        if (c != ys.coeff(ModLabel{{}, -l.index})) return false;
      if (m >= 1) {
        ModVector ya = ei.act(on_w, v_anti);
        for (const auto& [l, c] : ya.terms())
          if (c != -ya.coeff(ModLabel{{}, -l.index})) return false;
      }
    }
  }
  return true;
}

}  // namespace bcca
