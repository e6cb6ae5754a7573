#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bcca/algebra.hpp"
#include "bcca/echelon.hpp"
#include "bcca/symbols.hpp"

namespace bcca {

// Optional coarse layer on top of the symbol order: symbols in a lower block
// sort strictly before symbols in a higher block, regardless of family and
// index. An empty function means a single block. Induced-module engines use
// this to keep free generators left of the generators a character absorbs.
using PbwBlockFn = std::function<int(const BasisSymbol&)>;

// Word normalization order: block, then family rank ascending, then index
// descending, then parameter. Matches the canonical print order of AlgElem
// terms. Returns true when a must stand strictly left of b in a normal word.
bool pbw_symbol_precedes(const BasisSymbol& a, const BasisSymbol& b,
                         const PbwBlockFn& block);

// A word in the enveloping algebra: the product of its factors, leftmost
// factor first. The empty word is the identity.
struct Monomial {
  std::vector<BasisSymbol> factors;

  long length() const { return static_cast<long>(factors.size()); }
  // Total index weight (central factors count their index, which is 0).
  long weight() const;

  // "O:2.O:1"; the empty word prints as "1".
  std::string str() const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.factors == b.factors;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) {
    return !(a == b);
  }
};

// Storage order for term maps and row spaces: by length, then lexicographic
// in the block-free symbol order. Independent of any block function so that
// differently blocked elements still share one coordinate system.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// A word is normal when no adjacent pair is inverted under the order.
bool monomial_is_normal(const Monomial& m, const PbwBlockFn& block);

// Sparse element of the universal enveloping algebra of one algebra context.
// Sums and products require operands from the same context. The product is
// plain concatenation of words; use normal_order to reach the canonical
// form. Tracks word length and index weight through max_length and
// weight_range.
class UEAElem {
 public:
  explicit UEAElem(AlgebraId alg, PbwBlockFn block = {})
      : alg_(std::move(alg)), block_(std::move(block)) {}

  const AlgebraId& algebra() const { return alg_; }
  const PbwBlockFn& block() const { return block_; }
  const std::map<Monomial, Rat, MonomialLess>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_normal() const;

  // Accumulates c times the word m, dropping the term if it cancels. The
  // factors are trusted to be admissible, normalized symbols; the word
  // builders below are the safe way in.
  void add_term(const Monomial& m, const Rat& c);

  // Longest word length among the terms; 0 for the zero element.
  long max_length() const;
  // Smallest and largest index weight among the terms; (0, 0) for zero.
  std::pair<long, long> weight_range() const;

  UEAElem operator-() const;
  UEAElem& operator+=(const UEAElem& o);
  UEAElem& operator-=(const UEAElem& o);
  friend UEAElem operator+(UEAElem a, const UEAElem& b) { a += b; return a; }
  friend UEAElem operator-(UEAElem a, const UEAElem& b) { a -= b; return a; }
  friend UEAElem operator*(const Rat& c, const UEAElem& x);
  friend UEAElem operator*(const UEAElem& a, const UEAElem& b);

  // Structural equality of stored terms; semantic equality in the enveloping
  // algebra is equality of the normal_order images.
  friend bool operator==(const UEAElem& a, const UEAElem& b) {
    return a.alg_ == b.alg_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const UEAElem& a, const UEAElem& b) {
    return !(a == b);
  }

  // Terms as "c*word" joined by " + " in storage order; zero prints as "0".
  std::string str() const;

 private:
  AlgebraId alg_;
  PbwBlockFn block_;
  std::map<Monomial, Rat, MonomialLess> terms_;
};

// The identity element (empty word, coefficient 1).
UEAElem uea_one(const AlgebraId& alg, PbwBlockFn block = {});

// Embeds a Lie algebra element as a sum of one-factor words.
UEAElem uea_embed(const AlgebraId& alg, const AlgElem& x, PbwBlockFn block = {});

// Product of the normalized generators named by (family, index), left to
// right. Index normalization may introduce signs, lambda powers, or kill a
// factor (e.g. O:0), exactly as alg_sym does.
UEAElem uea_word(const AlgebraId& alg,
                 const std::vector<std::pair<Family, long>>& factors,
                 PbwBlockFn block = {});

// Rewrites every inverted adjacent pair xy into yx + [x,y] until all words
// are normal. Each swap strictly lowers the inversion count at fixed length
// and bracket terms are strictly shorter, so the rewriting terminates; the
// result is the unique normal form.
UEAElem normal_order(const UEAElem& x);

// Exact echelon span over monomial coordinates of one algebra context.
class RowSpace {
 public:
  explicit RowSpace(AlgebraId alg) : alg_(std::move(alg)) {}

  const AlgebraId& algebra() const { return alg_; }

  // Normal-orders v and inserts it; returns true when v was already in the
  // span (in particular for zero). Throws DomainError when v belongs to a
  // different algebra context.
  bool span_insert(const UEAElem& v);

  bool contains(const UEAElem& v) const;
  std::size_t rank() const { return span_.rank(); }

 private:
  AlgebraId alg_;
  EchelonSpace<Monomial, MonomialLess> span_;
};

// Which bound a truncated computation enforced; answers produced under a
// truncation carry the bound that was active.
enum class BoundKind { word_length, index_weight };

struct TruncationBound {
  BoundKind kind;
  long value;
};

}  // namespace bcca
