#include "bcca/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace bcca {

namespace {

struct AlgNameEntry {
  AlgName name;
  const char* text;
  bool takes_lambda;
};

constexpr AlgNameEntry kAlgNames[] = {
    {AlgName::witt, "witt", false},       {AlgName::virasoro, "virasoro", false},
    {AlgName::bms3, "bms3", false},       {AlgName::bcca, "bcca", false},
    {AlgName::bcca_hat, "bcca_hat", false}, {AlgName::O, "O", false},
    {AlgName::O_lambda, "O_lambda", true}, {AlgName::f_lambda, "f_lambda", true},
    {AlgName::b_uv, "b_uv", false},       {AlgName::b_UV, "b_UV", false},
};

const AlgNameEntry& entry_for(AlgName n) {
  for (const auto& e : kAlgNames) {
    if (e.name == n) return e;
  }
  throw InternalError("unregistered algebra name");
}

Rat witt_cocycle(long a) {
  // (1/12) a (a^2 - 1), the coefficient in [L_a, L_{-a}].
  return Rat(a) * Rat(a * a - 1) * Rat(1, 12);
}

}  // namespace

AlgebraId AlgebraId::parse(const std::string& name, std::optional<Rat> lambda) {
  for (const auto& e : kAlgNames) {
    if (name == e.text) {
      if (e.takes_lambda) {
        if (!lambda) throw DomainError(name + std::string(" requires a lambda parameter"));
        if (lambda->is_zero()) throw DomainError("lambda must be nonzero");
      } else if (lambda) {
        throw DomainError(name + std::string(" takes no lambda parameter"));
      }
      return AlgebraId{e.name, lambda};
    }
  }
  throw DomainError("unknown algebra: '" + name + "'");
}

std::string AlgebraId::str() const {
  const auto& e = entry_for(name);
  if (e.takes_lambda) return std::string(e.text) + "(" + lambda->str() + ")";
  return e.text;
}

Rat AlgElem::coeff(const BasisSymbol& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Rat(0) : it->second;
}

void AlgElem::add_raw(const BasisSymbol& s, const Rat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AlgElem AlgElem::operator-() const {
  AlgElem r;
  for (const auto& [s, c] : terms_) r.terms_.emplace(s, -c);
  return r;
}

AlgElem& AlgElem::operator+=(const AlgElem& o) {
  for (const auto& [s, c] : o.terms_) add_raw(s, c);
  return *this;
}

AlgElem& AlgElem::operator-=(const AlgElem& o) {
  for (const auto& [s, c] : o.terms_) add_raw(s, -c);
  return *this;
}

AlgElem operator*(const Rat& c, const AlgElem& x) {
  AlgElem r;
  if (c.is_zero()) return r;
  for (const auto& [s, xc] : x.terms_) r.terms_.emplace(s, c * xc);
  return r;
}

std::string AlgElem::str() const {
  if (terms_.empty()) return "0";
  // Families in rank order, indices descending within each family.
  std::vector<std::pair<BasisSymbol, Rat>> ordered;
  auto it = terms_.begin();
  while (it != terms_.end()) {
    auto family_end = it;
    while (family_end != terms_.end() && family_end->first.family == it->first.family) {
      ++family_end;
    }
    std::vector<std::pair<BasisSymbol, Rat>> block(it, family_end);
    std::reverse(block.begin(), block.end());
    ordered.insert(ordered.end(), block.begin(), block.end());
    it = family_end;
  }
  std::ostringstream out;
  bool first = true;
  for (const auto& [s, c] : ordered) {
    if (!first) out << " + ";
    out << c.str() << "*" << symbol_str(s);
    first = false;
  }
  return out.str();
}

bool family_admissible(const AlgebraId& alg, Family f) {
  switch (alg.name) {
    case AlgName::witt: return f == Family::L;
    case AlgName::virasoro: return f == Family::L || f == Family::C;
    case AlgName::bms3:
      return f == Family::L || f == Family::M || f == Family::C_L || f == Family::C_M;
    case AlgName::bcca: return f == Family::O || f == Family::P;
    case AlgName::bcca_hat:
      return f == Family::O || f == Family::P || f == Family::Ohat ||
             f == Family::Phat || f == Family::C_M;
    case AlgName::O: return f == Family::O;
    case AlgName::O_lambda: return f == Family::Olam;
    case AlgName::f_lambda: return f == Family::f;
    case AlgName::b_uv: return f == Family::u || f == Family::v;
    case AlgName::b_UV: return f == Family::U || f == Family::V;
  }
  throw InternalError("unhandled algebra");
}

void alg_insert(const AlgebraId& alg, AlgElem& out, Family f, long index, const Rat& c) {
  if (!family_admissible(alg, f)) {
    throw DomainError("symbol family " + family_name(f) + " is not part of " + alg.str());
  }
  if (c.is_zero()) return;
  Rat coeff = c;
  long i = index;
  std::optional<Rat> param;
  switch (f) {
    case Family::L:
    case Family::M:
    case Family::X:
      break;
    case Family::O:
      if (i == 0) return;
      if (i < 0) {
        coeff = -coeff;
        i = -i;
      }
      break;
    case Family::Olam:
      param = alg.lambda;
      if (i == 0) return;
      if (i < 0) {
        coeff = -coeff * alg.lambda->pow(i);
        i = -i;
      }
      break;
    case Family::P:
      if (i < 0) i = -i;
      break;
    case Family::Ohat:
      if (i < 0) i = -i;
      break;
    case Family::Phat:
      if (i == 0) return;
      if (i < 0) {
        coeff = -coeff;
        i = -i;
      }
      break;
    case Family::u:
    case Family::ulam:
    case Family::f:
      if (i < 1) {
        throw DomainError(family_name(f) + " index must be >= 1, got " + std::to_string(i));
      }
      if (f == Family::ulam) param = alg.lambda;
      if (f == Family::f) param = alg.lambda;
      break;
    case Family::v:
    case Family::m:
      if (i < 0) {
        throw DomainError(family_name(f) + " index must be >= 0, got " + std::to_string(i));
      }
      break;
    case Family::U:
    case Family::V:
      if (i < -1) {
        throw DomainError(family_name(f) + " index must be >= -1, got " + std::to_string(i));
      }
      break;
    case Family::C:
    case Family::C_L:
    case Family::C_M:
      i = 0;
      break;
  }
  out.add_raw(BasisSymbol{f, i, param}, coeff);
}

AlgElem alg_sym(const AlgebraId& alg, Family f, long index) {
  AlgElem e;
  alg_insert(alg, e, f, index, Rat(1));
  return e;
}

AlgElem alg_parse(const AlgebraId& alg, const std::string& text) {
  AlgElem r;
  if (text == "0") return r;
  std::size_t pos = 0;
  while (true) {
    const auto sep = text.find(" + ", pos);
    const std::string piece =
        (sep == std::string::npos) ? text.substr(pos) : text.substr(pos, sep - pos);
    const auto star = piece.find('*');
    if (star == std::string::npos) {
      throw DomainError("malformed element term: '" + piece + "'");
    }
    const Rat c = Rat::parse(piece.substr(0, star));
    const BasisSymbol s = symbol_parse(piece.substr(star + 1));
    alg_insert(alg, r, s.family, s.index, c);
    if (sep == std::string::npos) break;
    pos = sep + 3;
  }
  return r;
}

namespace {

// Bracket of two canonical-form basis symbols, accumulated into out with
// the overall coefficient c. Pairs are dispatched in a fixed family order;
// the caller has already handled admissibility.
void bracket_pair(const AlgebraId& alg, AlgElem& out, const BasisSymbol& x,
                  const BasisSymbol& y, const Rat& c) {
  Family fx = x.family;
  Family fy = y.family;
  if (family_is_central(fx) || family_is_central(fy)) return;
  long a = x.index;
  long b = y.index;
  Rat sign(1);
  // Normalize the pair so fx <= fy in family rank.
  if (static_cast<int>(fx) > static_cast<int>(fy)) {
    std::swap(fx, fy);
    std::swap(a, b);
    sign = Rat(-1);
  }
  const Rat s = sign * c;

  const auto ins = [&](Family f, long idx, const Rat& coeff) {
    alg_insert(alg, out, f, idx, s * coeff);
  };

  if (fx == Family::L && fy == Family::L) {
    ins(Family::L, a + b, Rat(a - b));
    if (a + b == 0) {
      if (alg.name == AlgName::virasoro) ins(Family::C, 0, witt_cocycle(a));
      if (alg.name == AlgName::bms3) ins(Family::C_L, 0, witt_cocycle(a));
    }
    return;
  }
  if (fx == Family::L && fy == Family::M) {
    ins(Family::M, a + b, Rat(a - b));
    if (a + b == 0 && alg.name == AlgName::bms3) ins(Family::C_M, 0, witt_cocycle(a));
    return;
  }
  if (fx == Family::M && fy == Family::M) return;

  if (fx == Family::O && fy == Family::O) {
    ins(Family::O, a + b, Rat(a - b));
    ins(Family::O, a - b, Rat(-(a + b)));
    return;
  }
  if (fx == Family::O && fy == Family::P) {
    ins(Family::P, a + b, Rat(a - b));
    ins(Family::P, a - b, Rat(a + b));
    if (alg.name == AlgName::bcca_hat && a == b) {
      ins(Family::C_M, 0, Rat(2) * witt_cocycle(a));
    }
    return;
  }
  if (fx == Family::P && fy == Family::P) return;

  if (fx == Family::O && fy == Family::Ohat) {
    if (a == b) {
      // The result contains 2a L_0 and a central charge outside this span.
      throw DomainError("bracket [O:" + std::to_string(a) + ", Ohat:" +
                        std::to_string(a) + "] leaves the tracked span");
    }
    ins(Family::Ohat, a + b, Rat(a - b));
    ins(Family::Ohat, a - b, Rat(a + b));
    return;
  }
  if (fx == Family::O && fy == Family::Phat) {
    ins(Family::Phat, a + b, Rat(a - b));
    ins(Family::Phat, a - b, Rat(-(a + b)));
    return;
  }
  if (fx == Family::Ohat && fy == Family::Ohat) {
    ins(Family::O, a + b, Rat(a - b));
    ins(Family::O, a - b, Rat(a + b));
    return;
  }
  if (fx == Family::Ohat && fy == Family::P) {
    // Stated as [P_n, Ohat_m]; swap to that orientation.
    ins(Family::Phat, b + a, Rat(-(b - a)));
    ins(Family::Phat, b - a, Rat(-(b + a)));
    return;
  }
  if (fx == Family::Ohat && fy == Family::Phat) {
    ins(Family::P, b + a, Rat(-(b - a)));
    ins(Family::P, b - a, Rat(-(b + a)));
    if (a == b) ins(Family::C_M, 0, Rat(-2) * witt_cocycle(b));
    return;
  }
  if (fx == Family::P && fy == Family::Phat) return;
  if (fx == Family::Phat && fy == Family::Phat) return;

  if (fx == Family::Olam && fy == Family::Olam) {
    ins(Family::Olam, a + b, Rat(a - b));
    ins(Family::Olam, a - b, Rat(-(a + b)) * alg.lambda->pow(b));
    return;
  }
  if (fx == Family::f && fy == Family::f) {
    if (a == b) return;
    ins(Family::f, a + b, Rat(a - b));
    ins(Family::f, a + b - 2, Rat(-4 * (a - b)) * *alg.lambda);
    return;
  }
  if (fx == Family::u && fy == Family::u) {
    if (a == b) return;
    ins(Family::u, a + b, Rat(a - b));
    ins(Family::u, a + b - 2, Rat(-4 * (a - b)));
    return;
  }
  if (fx == Family::u && fy == Family::v) {
    ins(Family::v, a + b, Rat(a - b));
    ins(Family::v, a + b - 2, Rat(-4 * (a - b - 1)));
    return;
  }
  if (fx == Family::v && fy == Family::v) return;

  if (fx == Family::U && fy == Family::U) {
    if (a == b) return;
    ins(Family::U, a + b + 2, Rat(a - b));
    ins(Family::U, a + b, Rat(-4 * (a - b)));
    return;
  }
  if (fx == Family::U && fy == Family::V) {
    ins(Family::V, a + b + 2, Rat(a - b + 1));
    ins(Family::V, a + b, Rat(-4 * (a - b)));
    return;
  }
  if (fx == Family::V && fy == Family::V) return;

  throw InternalError("no bracket rule for " + family_name(fx) + "/" + family_name(fy));
}

}  // namespace

AlgElem bracket(const AlgebraId& alg, const AlgElem& x, const AlgElem& y) {
  for (const auto& [s, c] : x.terms()) {
    if (!family_admissible(alg, s.family)) {
      throw DomainError("symbol " + symbol_str(s) + " is not part of " + alg.str());
    }
  }
  for (const auto& [s, c] : y.terms()) {
    if (!family_admissible(alg, s.family)) {
      throw DomainError("symbol " + symbol_str(s) + " is not part of " + alg.str());
    }
  }
  AlgElem out;
  for (const auto& [sx, cx] : x.terms()) {
    for (const auto& [sy, cy] : y.terms()) {
      bracket_pair(alg, out, sx, sy, cx * cy);
    }
  }
  return out;
}

std::vector<BasisSymbol> basis_window(const AlgebraId& alg, long window) {
  if (window < 1) throw DomainError("window must be >= 1");
  std::vector<BasisSymbol> basis;
  const auto add_range = [&](Family f, long lo, long hi) {
    for (long i = lo; i <= hi; ++i) basis.push_back(sym(f, i));
  };
  switch (alg.name) {
    case AlgName::witt:
      add_range(Family::L, -window, window);
      break;
    case AlgName::virasoro:
      add_range(Family::L, -window, window);
      basis.push_back(sym(Family::C));
      break;
    case AlgName::bms3:
      add_range(Family::L, -window, window);
      add_range(Family::M, -window, window);
      basis.push_back(sym(Family::C_L));
      basis.push_back(sym(Family::C_M));
      break;
    case AlgName::bcca:
      add_range(Family::O, 1, window);
      add_range(Family::P, 0, window);
      break;
    case AlgName::bcca_hat:
      // The hatted families are bms3 bookkeeping symbols, not part of the
      // algebra itself; Jacobi runs over the algebra's own basis.
      add_range(Family::O, 1, window);
      add_range(Family::P, 0, window);
      basis.push_back(sym(Family::C_M));
      break;
    case AlgName::O:
      add_range(Family::O, 1, window);
      break;
    case AlgName::O_lambda:
      for (long i = 1; i <= window; ++i) basis.push_back(BasisSymbol{Family::Olam, i, alg.lambda});
      break;
    case AlgName::f_lambda:
      for (long i = 1; i <= window; ++i) basis.push_back(BasisSymbol{Family::f, i, alg.lambda});
      break;
    case AlgName::b_uv:
      add_range(Family::u, 1, window);
      add_range(Family::v, 0, window);
      break;
    case AlgName::b_UV:
      add_range(Family::U, -1, window);
      add_range(Family::V, -1, window);
      break;
  }
  return basis;
}

bool jacobi_check(const AlgebraId& alg, long window) {
  const std::vector<BasisSymbol> basis = basis_window(alg, window);
  std::vector<AlgElem> elems;
  elems.reserve(basis.size());
  for (const auto& s : basis) {
    AlgElem e;
    alg_insert(alg, e, s.family, s.index, Rat(1));
    elems.push_back(e);
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i; j < elems.size(); ++j) {
      for (std::size_t k = j; k < elems.size(); ++k) {
        AlgElem acc = bracket(alg, elems[i], bracket(alg, elems[j], elems[k]));
        acc += bracket(alg, elems[j], bracket(alg, elems[k], elems[i]));
        acc += bracket(alg, elems[k], bracket(alg, elems[i], elems[j]));
        if (!acc.is_zero()) return false;
      }
    }
  }
  return true;
}

bool o_lambda_iso(const Rat& lambda, const Rat& mu) {
  if (lambda.is_zero() || mu.is_zero()) {
    throw DomainError("isomorphism test requires nonzero parameters");
  }
  const Rat ratio = lambda / mu;
  if (ratio.sign() < 0) return false;
  return mpz_perfect_square_p(ratio.num().get_mpz_t()) != 0 &&
         mpz_perfect_square_p(ratio.den().get_mpz_t()) != 0;
}

bool family_is_density(Family f) {
  switch (f) {
    case Family::M:
    case Family::P:
    case Family::Phat:
    case Family::v:
    case Family::V:
    case Family::m:
      return true;
    default:
      return false;
  }
}

std::optional<LaurentPoly> laurent_realization(const AlgebraId& alg, const BasisSymbol& s) {
  const long i = s.index;
  const auto mono = [](long e, const Rat& c) { return LaurentPoly::monomial(e, c); };
  switch (s.family) {
    case Family::L:
    case Family::M:
      return mono(i + 1, Rat(-1));
    case Family::O:
      return mono(i + 1, Rat(-1)) + mono(-i + 1, Rat(1));
    case Family::Ohat:
      return mono(i + 1, Rat(-1)) + mono(-i + 1, Rat(-1));
    case Family::P:
      return mono(i + 1, Rat(-1)) + mono(-i + 1, Rat(-1));
    case Family::Phat:
      return mono(i + 1, Rat(-1)) + mono(-i + 1, Rat(1));
    case Family::Olam:
      return mono(i + 1, Rat(-1)) + mono(-i + 1, alg.lambda->pow(i));
    case Family::f:
      return mono(i + 1, Rat(-1)) + mono(i - 1, Rat(4) * *alg.lambda);
    case Family::u: {
      // -(t + 1/t)^(i-1) (t^2 - 1)
      LaurentPoly base = mono(1, Rat(1)) + mono(-1, Rat(1));
      LaurentPoly acc = LaurentPoly(Rat(-1));
      for (long k = 0; k < i - 1; ++k) acc = acc * base;
      return acc * (mono(2, Rat(1)) + mono(0, Rat(-1)));
    }
    case Family::ulam: {
      LaurentPoly base = mono(1, Rat(1)) + mono(-1, *alg.lambda);
      LaurentPoly acc = LaurentPoly(Rat(-1));
      for (long k = 0; k < i - 1; ++k) acc = acc * base;
      return acc * (mono(2, Rat(1)) + mono(0, -*alg.lambda));
    }
    case Family::v: {
      // -(t + 1/t)^i * t, a weight -1 density coefficient
      LaurentPoly base = mono(1, Rat(1)) + mono(-1, Rat(1));
      LaurentPoly acc = LaurentPoly(Rat(-1));
      for (long k = 0; k < i; ++k) acc = acc * base;
      return acc * mono(1, Rat(1));
    }
    case Family::U: {
      // u_{i+2} in the t variable
      LaurentPoly base = mono(1, Rat(1)) + mono(-1, Rat(1));
      LaurentPoly acc = LaurentPoly(Rat(-1));
      for (long k = 0; k < i + 1; ++k) acc = acc * base;
      return acc * (mono(2, Rat(1)) + mono(0, Rat(-1)));
    }
    case Family::V: {
      // v_{i+1} in the t variable
      LaurentPoly base = mono(1, Rat(1)) + mono(-1, Rat(1));
      LaurentPoly acc = LaurentPoly(Rat(-1));
      for (long k = 0; k < i + 1; ++k) acc = acc * base;
      return acc * mono(1, Rat(1));
    }
    case Family::m:
      return mono(i, Rat(-1));
    default:
      return std::nullopt;
  }
}

LaurentPoly lp_density_action(const LaurentPoly& f, const LaurentPoly& h) {
  return f * h.derive() - f.derive() * h;
}

LaurentPoly lp_sqrt_twisted_action(const LaurentPoly& g, const LaurentPoly& p) {
  const LaurentPoly f = LaurentPoly::monomial(2, Rat(1)) + LaurentPoly(Rat(-4));
  return f * (g * p.derive() - g.derive() * p) -
         LaurentPoly::monomial(1, Rat(1)) * g * p;
}

}  // namespace bcca
