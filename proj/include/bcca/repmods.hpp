#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bcca/algebra.hpp"
#include "bcca/echelon.hpp"
#include "bcca/pbw.hpp"

namespace bcca {

// Exact character data for a Whittaker-type module over the shifted algebra:
// values on U_n..U_{2n+2} (and V_n..V_{2n} when the algebra is 'b'), with the
// closure rules value(U_{m+2}) = 4*value(U_m) and value(V_m) = 0 applied on
// demand above the stored window.
class WhittakerFn {
 public:
  WhittakerFn(char algebra, long level, std::map<long, Rat> u_values,
              std::map<long, Rat> v_values = {});

  char algebra() const { return algebra_; }  // 'O' or 'b'
  long level() const { return level_; }
  const std::map<long, Rat>& stored_u() const { return u_; }
  const std::map<long, Rat>& stored_v() const { return v_; }

  // Stored or closure-derived value; indices below the level are rejected.
  Rat u_value(long m) const;
  Rat v_value(long m) const;
  Rat value(const BasisSymbol& s) const;

  // Largest of {2n-1, 2n} with nonzero V-value ('b' only); level 0 always
  // uses kappa = 0. Empty when level >= 1 and both candidates vanish.
  std::optional<long> kappa() const;

  // True when the induced module is reducible: over 'b' the top V-values
  // vanish; over 'O' the closure rule extends below its usual range
  // (U_{2n+2} = 4 U_{2n}, and for level >= 1 also U_{2n+1} = 4 U_{2n-1}).
  bool degenerate() const;

  std::string str() const;

  friend bool operator==(const WhittakerFn& a, const WhittakerFn& b) {
    return a.algebra_ == b.algebra_ && a.level_ == b.level_ && a.u_ == b.u_ &&
           a.v_ == b.v_;
  }

 private:
  char algebra_;
  long level_;
  std::map<long, Rat> u_, v_;
};

enum class ModKind {
  tensor_density,
  pb,
  pb_tilde,
  verma_vir,
  verma_bms,
  massive,
  omega,
  whittaker_O,
  whittaker_b,
  quasi_whittaker_bms,
};

std::string mod_kind_str(ModKind k);

// A module construction together with its parameters. Use the factories;
// they validate the parameter domain (e.g. omega requires lambda != 0).
struct ModuleSpec {
  ModKind kind;
  std::vector<Rat> params;
  std::optional<WhittakerFn> fn;

  static ModuleSpec tensor_density(const Rat& a, const Rat& b);
  static ModuleSpec pb(const Rat& b);
  static ModuleSpec pb_tilde(const Rat& b);
  static ModuleSpec verma_vir(const Rat& h, const Rat& c);
  static ModuleSpec verma_bms(const Rat& h_l, const Rat& h_m, const Rat& c_l,
                              const Rat& c_m);
  static ModuleSpec massive(const Rat& big_m, const Rat& big_s, const Rat& c_l,
                            const Rat& c_m);
  static ModuleSpec omega(const Rat& lambda, const Rat& a);
  static ModuleSpec whittaker_O(WhittakerFn fn);
  static ModuleSpec whittaker_b(WhittakerFn fn);
  static ModuleSpec quasi_whittaker_bms(const Rat& big_m, const Rat& c_l,
                                        const Rat& c_m);

  // The algebra context whose elements act. The massive module also accepts
  // elements written in the O/Ohat/P/Phat coordinates, and omega also
  // accepts the O family.
  AlgebraId acting_algebra() const;

  std::string str() const;
};

// Basis label of a module vector. Induced kinds store a normal word in the
// free generators (the empty word is the cyclic vector); the indexed kinds
// use index alone (I_n, P_n, Pt_n, X^k) with an empty word.
struct ModLabel {
  Monomial word;
  long index = 0;

  friend bool operator==(const ModLabel& a, const ModLabel& b) {
    return a.word == b.word && a.index == b.index;
  }
  friend bool operator!=(const ModLabel& a, const ModLabel& b) {
    return !(a == b);
  }
};

struct ModLabelLess {
  bool operator()(const ModLabel& a, const ModLabel& b) const {
    MonomialLess ml;
    if (ml(a.word, b.word)) return true;
    if (ml(b.word, a.word)) return false;
    return a.index < b.index;
  }
};

// Sparse module vector with exact coefficients; interpreted relative to a
// ModuleSpec, which fixes the label alphabet.
class ModVector {
 public:
  ModVector() = default;

  bool is_zero() const { return terms_.empty(); }
  const std::map<ModLabel, Rat, ModLabelLess>& terms() const { return terms_; }
  Rat coeff(const ModLabel& l) const;
  void add_term(const ModLabel& l, const Rat& c);

  // Longest word length among the labels; 0 for indexed kinds and zero.
  long max_word_length() const;

  ModVector operator-() const;
  ModVector& operator+=(const ModVector& o);
  ModVector& operator-=(const ModVector& o);
  friend ModVector operator+(ModVector a, const ModVector& b) { a += b; return a; }
  friend ModVector operator-(ModVector a, const ModVector& b) { a -= b; return a; }
  friend ModVector operator*(const Rat& c, const ModVector& v);
  friend bool operator==(const ModVector& a, const ModVector& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const ModVector& a, const ModVector& b) {
    return !(a == b);
  }

 private:
  std::map<ModLabel, Rat, ModLabelLess> terms_;
};

// The distinguished vector: cyclic vector for induced kinds, X^0 for omega,
// I_0 / P_0 / Pt_1 for the density kinds.
ModVector mod_cyclic(const ModuleSpec& spec);

// Basis vector for a label; indexed labels are normalized first (P_{-n} to
// P_n, Pt_{-n} to -Pt_n, Pt_0 to zero). Throws DomainError on labels outside
// the module's alphabet.
ModVector mod_basis(const ModuleSpec& spec, const ModLabel& label);

// Product of the named generators applied to the cyclic vector, computed
// through the module engine, so the factors may be given in any order.
ModVector mod_word(const ModuleSpec& spec,
                   const std::vector<std::pair<Family, long>>& factors);

std::string mod_label_str(const ModuleSpec& spec, const ModLabel& l);
std::string mod_str(const ModuleSpec& spec, const ModVector& v);
ModVector mod_parse(const ModuleSpec& spec, const std::string& text);

// All labels with index weight <= weight_bound and word length <=
// length_bound (indexed kinds: |index| <= weight_bound), in label order.
std::vector<ModLabel> mod_basis_window(const ModuleSpec& spec, long weight_bound,
                                       long length_bound);

// Rewrites O/Ohat/P/Phat/C_M terms into the L/M coordinates of bms3
// (O_n = L_n - L_{-n}, Ohat_n = L_n + L_{-n}, P_n = M_n + M_{-n},
// Phat_n = M_n - M_{-n}); L, M, C_L, C_M terms pass through.
AlgElem hat_to_bms(const AlgElem& x);

// Computes module actions for one spec; build one instance for loops. The
// induced kinds reduce by normal ordering and then absorbing the trailing
// factors the inducing character evaluates.
class ModuleEngine {
 public:
  explicit ModuleEngine(ModuleSpec spec);

  const ModuleSpec& spec() const { return spec_; }

  ModVector act(const AlgElem& x, const ModVector& v) const;
  ModVector act(const BasisSymbol& s, const ModVector& v) const;

  // Induced kinds only: image of an enveloping-algebra element applied to
  // the cyclic vector.
  ModVector reduce(const UEAElem& u) const;

 private:
  ModVector act_induced(const AlgElem& x, const ModVector& v) const;
  ModVector act_tensor_density(const AlgElem& x, const ModVector& v) const;
  ModVector act_pb(const AlgElem& x, const ModVector& v, bool tilde) const;
  ModVector act_omega(const AlgElem& x, const ModVector& v) const;

  ModuleSpec spec_;
  AlgebraId ctx_;
  PbwBlockFn block_;
  std::function<Rat(const BasisSymbol&)> char_;
};

ModVector act(const ModuleSpec& spec, const AlgElem& x, const ModVector& v);

Rat whittaker_value(const WhittakerFn& fn, const BasisSymbol& sym);

// Change of coordinates for the massive module between its L-word labels
// and the alternative PBW basis of O-words followed by Ohat-words applied
// to the cyclic vector. The translation table grows on demand.
class MassiveAltCoords {
 public:
  explicit MassiveAltCoords(const ModuleSpec& spec);

  // Expansion of an alternative basis word (families O/Ohat, indices >= 1,
  // in normal order) into L-word coordinates.
  ModVector expand(const Monomial& alt_word);

  // Inverse expansion. Throws InternalError if v escapes the span of the
  // table at its own length and index-weight bounds, which cannot happen
  // for vectors of the module.
  std::map<Monomial, Rat, MonomialLess> coords(const ModVector& v);

 private:
  using Key = std::pair<int, ModLabel>;
  struct KeyLess {
    bool operator()(const Key& a, const Key& b) const {
      if (a.first != b.first) return a.first < b.first;
      ModLabelLess l;
      if (l(a.second, b.second)) return true;
      return false;
    }
  };

  void ensure(long length_bound, long weight_bound);

  ModuleEngine engine_;
  EchelonSpace<Key, KeyLess> table_;
  std::set<Monomial, MonomialLess> inserted_;
  long covered_length_ = -1;
  long covered_weight_ = -1;
};

// All alternative-basis words (families O/Ohat, indices >= 1) with index
// weight <= weight_bound and length <= length_bound.
std::vector<Monomial> massive_alt_window(long weight_bound, long length_bound);

struct ClosureReport {
  bool cyclic_in_span = false;
  bool stabilized = false;  // closure completed with nothing discarded
  bool truncated = false;   // some product left the label window
  std::size_t rank = 0;
  std::vector<ModVector> rows;
};

// Iterated action of the generator set on the seeds, collected in an exact
// row space over the module labels. Products whose labels leave the window
// are discarded and flagged, so membership answers are certificates while
// exclusion is evidence bounded by the window.
ClosureReport submodule_closure(const ModuleSpec& spec,
                                const std::vector<ModVector>& seeds,
                                long weight_bound, long length_bound);
ClosureReport submodule_closure(const ModuleSpec& spec,
                                const std::vector<ModVector>& seeds,
                                long weight_bound, long length_bound,
                                const std::vector<AlgElem>& generators);

// Generator set the one-argument closure uses: the acting algebra's basis
// window, except for the massive module, which closes over its natural
// subalgebra {O_n (n >= 1), P_n (n >= 0), C_M}.
std::vector<AlgElem> default_closure_generators(const ModuleSpec& spec,
                                                long weight_bound);

enum class ProbeStatus { reduced, refused, failed };

// One reduction step: apply (op - shift * id).
struct ProbeStep {
  AlgElem op;
  Rat shift;
};

struct ProbeResult {
  ProbeStatus status = ProbeStatus::failed;
  std::vector<ProbeStep> steps;
  ModVector final_vector;
  Rat final_coeff;      // final_vector = final_coeff * cyclic vector
  std::string detail;   // refusal reason or the step that annihilated v
  ModVector witness;    // reducibility witness accompanying a refusal
};

// Drives v to a nonzero multiple of the cyclic vector by eigenvalue-shifted
// generator applications (whittaker kinds) or by one solved generator
// combination (omega). Refuses with the known reducibility witness when the
// parameters make the module reducible. Throws DomainError for other kinds.
ProbeResult cyclicity_probe(const ModuleSpec& spec, const ModVector& v,
                            long length_bound);

// The exact reducibility witness vector for degenerate whittaker characters
// and for omega with a = 0; empty otherwise.
std::optional<ModVector> reducibility_witness(const ModuleSpec& spec);

struct ParityReport {
  bool pass = false;
  bool parity_preserved = false;
  bool classes_span = false;
  long window = 0;
  std::string counterexample;
};

// Checks that the P-family and u-family actions preserve the parity of the
// Ohat-factor count in the alternative basis of the massive module, and that
// the two parity classes together span the window.
ParityReport massive_parity_split(const Rat& big_m, const Rat& big_s,
                                  const Rat& c_l, const Rat& c_m, long window);

// Checks that dropping the single trailing Ohat_n factor intertwines the
// {O_k, P_k, C_M}-action between the submodule generated by Ohat_n applied
// to the cyclic vector and the one generated by the cyclic vector itself.
bool massive_ohat_iso_check(const Rat& big_m, const Rat& big_s, const Rat& c_l,
                            const Rat& c_m, long n, long weight_bound);

struct FreenessReport {
  bool free = false;
  long weight_bound = 0;
  std::vector<std::size_t> cumulative_rank;    // per weight level 0..bound
  std::vector<std::size_t> expected_rank;
};

// Applies the small-algebra monomials (O-words for the Virasoro Verma
// module; O- and P-words omitting P_0 and C_M for the bms3 one) to the
// highest-weight vector and reports whether their images stay of full rank
// at every weight level up to the bound.
FreenessReport restriction_freeness_check(const ModuleSpec& big,
                                          const AlgebraId& small_algebra,
                                          long weight_bound);

// All basis symbols x of the given families with |index| <= probe_window
// such that phi([x, y]) vanishes for every ideal symbol y within the
// enlarged window. Verifies first that phi kills brackets inside the ideal.
std::vector<BasisSymbol> whittaker_annihilator(
    const AlgebraId& alg, const std::vector<Family>& x_families,
    const std::vector<Family>& ideal_families,
    const std::function<Rat(const BasisSymbol&)>& phi, long probe_window);

// Character with phi(M_i) = delta_{i0} * big_m on the abelian ideal of bms3
// plus the central values; domain {M, C_L, C_M}.
std::function<Rat(const BasisSymbol&)> massive_quasi_character(const Rat& big_m,
                                                               const Rat& c_l,
                                                               const Rat& c_m);

// Character with phi(P_i) = 2 * delta_{i0} * big_m; domain {P, C_M}.
std::function<Rat(const BasisSymbol&)> massive_b_character(const Rat& big_m,
                                                           const Rat& c_m);

// True iff deg(O_k . X^d) <= d for all k, d <= max_degree; only meaningful
// (and only accepted) for lambda in {1, -1}.
bool omega_degree_filtration_check(const Rat& lambda, const Rat& a,
                                   long max_degree);

// True iff I_m -> P_{|m|} intertwines the O-action of I(0,b) with the one
// on the P-module, and the symmetric and antisymmetric spans of I(0,b) are
// each invariant, over all generator and vector indices <= window.
bool tensor_density_split_check(const Rat& b, long window);

}  // namespace bcca
