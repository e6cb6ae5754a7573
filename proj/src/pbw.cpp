#include "bcca/pbw.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace bcca {

namespace {

// Three-way compare in the block-free order: family rank, then index
// descending, then parameter.
int symbol_cmp(const BasisSymbol& a, const BasisSymbol& b) {
  if (a.family != b.family) return a.family < b.family ? -1 : 1;
  if (a.index != b.index) return a.index > b.index ? -1 : 1;
  if (a.param.has_value() != b.param.has_value())
    return a.param.has_value() ? 1 : -1;
  if (a.param && b.param && *a.param != *b.param)
    return *a.param < *b.param ? -1 : 1;
  return 0;
}

// Position of the first adjacent inversion, if any.
std::optional<std::size_t> first_inversion(const Monomial& m,
                                           const PbwBlockFn& block) {
  for (std::size_t i = 0; i + 1 < m.factors.size(); ++i) {
    if (pbw_symbol_precedes(m.factors[i + 1], m.factors[i], block))
      return i;
  }
  return std::nullopt;
}

}  // namespace

bool pbw_symbol_precedes(const BasisSymbol& a, const BasisSymbol& b,
                         const PbwBlockFn& block) {
  if (block) {
    const int ba = block(a);
    const int bb = block(b);
    if (ba != bb) return ba < bb;
  }
  return symbol_cmp(a, b) < 0;
}

long Monomial::weight() const {
  long w = 0;
  for (const auto& s : factors) w += s.index;
  return w;
}

std::string Monomial::str() const {
  if (factors.empty()) return "1";
  std::ostringstream out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out << ".";
    out << symbol_str(factors[i]);
  }
  return out.str();
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  if (a.factors.size() != b.factors.size())
    return a.factors.size() < b.factors.size();
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    const int c = symbol_cmp(a.factors[i], b.factors[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

bool monomial_is_normal(const Monomial& m, const PbwBlockFn& block) {
  return !first_inversion(m, block).has_value();
}

bool UEAElem::is_normal() const {
  return std::all_of(terms_.begin(), terms_.end(), [this](const auto& t) {
    return monomial_is_normal(t.first, block_);
  });
}

void UEAElem::add_term(const Monomial& m, const Rat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

long UEAElem::max_length() const {
  long best = 0;
  for (const auto& [m, c] : terms_) best = std::max(best, m.length());
  return best;
}

std::pair<long, long> UEAElem::weight_range() const {
  if (terms_.empty()) return {0, 0};
  long lo = terms_.begin()->first.weight();
  long hi = lo;
  for (const auto& [m, c] : terms_) {
    const long w = m.weight();
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  return {lo, hi};
}

UEAElem UEAElem::operator-() const {
  UEAElem out(alg_, block_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

UEAElem& UEAElem::operator+=(const UEAElem& o) {
  if (alg_ != o.alg_) throw DomainError("enveloping-algebra context mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

UEAElem& UEAElem::operator-=(const UEAElem& o) {
  if (alg_ != o.alg_) throw DomainError("enveloping-algebra context mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

UEAElem operator*(const Rat& c, const UEAElem& x) {
  UEAElem out(x.alg_, x.block_);
  if (c.is_zero()) return out;
  for (const auto& [m, k] : x.terms_) out.terms_.emplace(m, c * k);
  return out;
}

UEAElem operator*(const UEAElem& a, const UEAElem& b) {
  if (a.alg_ != b.alg_)
    throw DomainError("enveloping-algebra context mismatch");
  UEAElem out(a.alg_, a.block_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      m.factors.insert(m.factors.end(), mb.factors.begin(), mb.factors.end());
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

std::string UEAElem::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << c.str() << "*" << m.str();
  }
  return out.str();
}

UEAElem uea_one(const AlgebraId& alg, PbwBlockFn block) {
  UEAElem out(alg, std::move(block));
  out.add_term(Monomial{}, Rat(1));
  return out;
}

UEAElem uea_embed(const AlgebraId& alg, const AlgElem& x, PbwBlockFn block) {
  UEAElem out(alg, std::move(block));
  for (const auto& [s, c] : x.terms()) out.add_term(Monomial{{s}}, c);
  return out;
}

UEAElem uea_word(const AlgebraId& alg,
                 const std::vector<std::pair<Family, long>>& factors,
                 PbwBlockFn block) {
  UEAElem out = uea_one(alg, std::move(block));
  for (const auto& [f, index] : factors)
    out = out * uea_embed(alg, alg_sym(alg, f, index), out.block());
  return out;
}

UEAElem normal_order(const UEAElem& x) {
  const AlgebraId& alg = x.algebra();
  const PbwBlockFn& block = x.block();
  UEAElem out(alg, block);
  std::map<Monomial, Rat, MonomialLess> work(x.terms().begin(),
                                             x.terms().end());
  while (!work.empty()) {
    // Longest words first, so shorter bracket remainders accumulate fully
    // before they are themselves rewritten.
    auto node = work.extract(std::prev(work.end()));
    const Monomial& m = node.key();
    const Rat& c = node.mapped();
    if (c.is_zero()) continue;
    const auto inv = first_inversion(m, block);
    if (!inv) {
      out.add_term(m, c);
      continue;
    }
    const std::size_t i = *inv;
    Monomial swapped = m;
    std::swap(swapped.factors[i], swapped.factors[i + 1]);
    work[swapped] += c;
    AlgElem left, right;
    left.add_raw(m.factors[i], Rat(1));
    right.add_raw(m.factors[i + 1], Rat(1));
    const AlgElem br = bracket(alg, left, right);
    for (const auto& [s, bc] : br.terms()) {
      Monomial shorter;
      shorter.factors.reserve(m.factors.size() - 1);
      shorter.factors.assign(m.factors.begin(),
                             m.factors.begin() + static_cast<long>(i));
      shorter.factors.push_back(s);
      shorter.factors.insert(shorter.factors.end(),
                             m.factors.begin() + static_cast<long>(i) + 2,
                             m.factors.end());
      work[shorter] += c * bc;
    }
  }
  return out;
}

bool RowSpace::span_insert(const UEAElem& v) {
  if (v.algebra() != alg_) throw DomainError("row space context mismatch");
  const UEAElem n = normal_order(v);
  EchelonSpace<Monomial, MonomialLess>::Vec vec(n.terms().begin(),
                                                n.terms().end());
  return !span_.insert(std::move(vec));
}

bool RowSpace::contains(const UEAElem& v) const {
  if (v.algebra() != alg_) throw DomainError("row space context mismatch");
  const UEAElem n = normal_order(v);
  EchelonSpace<Monomial, MonomialLess>::Vec vec(n.terms().begin(),
                                                n.terms().end());
  return span_.contains(vec);
}

}  // namespace bcca
