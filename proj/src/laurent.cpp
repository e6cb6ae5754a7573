#include "bcca/laurent.hpp"

#include <sstream>
#include <vector>

namespace bcca {

Rat LaurentPoly::coeff(long exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Rat(0) : it->second;
}

long LaurentPoly::min_exp() const {
  if (terms_.empty()) throw DomainError("min_exp of zero polynomial");
  return terms_.begin()->first;
}

long LaurentPoly::max_exp() const {
  if (terms_.empty()) throw DomainError("max_exp of zero polynomial");
  return terms_.rbegin()->first;
}

void LaurentPoly::add_term(long exp, const Rat& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exp, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      r.add_term(ea + eb, ca * cb);
    }
  }
  return r;
}

LaurentPoly operator*(const Rat& c, const LaurentPoly& p) {
  LaurentPoly r;
  if (c.is_zero()) return r;
  for (const auto& [e, pc] : p.terms_) r.terms_.emplace(e, c * pc);
  return r;
}

LaurentPoly LaurentPoly::derive() const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) {
    if (e != 0) r.add_term(e - 1, Rat(e) * c);
  }
  return r;
}

Rat LaurentPoly::eval(const Rat& x) const {
  if (x.is_zero() && !terms_.empty() && min_exp() < 0) {
    throw DomainError("evaluation at t = 0 with negative exponents present");
  }
  Rat acc(0);
  for (const auto& [e, c] : terms_) acc += c * x.pow(e);
  return acc;
}

LaurentPoly LaurentPoly::scale_var(const Rat& alpha) const {
  if (alpha.is_zero()) throw DomainError("variable scaling by zero");
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * alpha.pow(e));
  return r;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << " + ";
    out << c.str() << "*t^" << e;
    first = false;
  }
  return out.str();
}

LaurentPoly LaurentPoly::parse(const std::string& text) {
  // Split on " + " separators; each piece must be "c*t^k" or a bare "0".
  std::vector<std::string> pieces;
  std::size_t pos = 0;
  while (true) {
    const auto sep = text.find(" + ", pos);
    if (sep == std::string::npos) {
      pieces.push_back(text.substr(pos));
      break;
    }
    pieces.push_back(text.substr(pos, sep - pos));
    pos = sep + 3;
  }
  LaurentPoly r;
  if (pieces.size() == 1 && pieces[0] == "0") return r;
  for (const auto& piece : pieces) {
    const auto star = piece.find("*t^");
    if (star == std::string::npos) {
      throw DomainError("malformed Laurent term: '" + piece + "'");
    }
    const Rat c = Rat::parse(piece.substr(0, star));
    const std::string exp_tok = piece.substr(star + 3);
    try {
      std::size_t used = 0;
      const long e = std::stol(exp_tok, &used);
      if (used != exp_tok.size()) throw std::invalid_argument(exp_tok);
      r.add_term(e, c);
    } catch (const std::logic_error&) {
      throw DomainError("malformed exponent: '" + exp_tok + "'");
    }
  }
  return r;
}

LaurentPoly lp_derive(const LaurentPoly& p) { return p.derive(); }

LaurentPoly lp_witt_bracket(const LaurentPoly& f, const LaurentPoly& g) {
  return f * g.derive() - f.derive() * g;
}

Rat lp_vir_cocycle(const LaurentPoly& f, const LaurentPoly& g) {
  return Rat(1, 12) * (f.derive() * g.derive().derive()).residue();
}

}  // namespace bcca
