#include "bcca/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bcca/algebra.hpp"
#include "bcca/appendix.hpp"
#include "bcca/basischange.hpp"
#include "bcca/filtration.hpp"
#include "bcca/identity.hpp"
#include "bcca/localfn.hpp"
#include "bcca/repmods.hpp"

namespace bcca {
namespace {

const AlgebraId kWitt{AlgName::witt, {}};
const AlgebraId kVir{AlgName::virasoro, {}};
const AlgebraId kBms{AlgName::bms3, {}};
const AlgebraId kBcca{AlgName::bcca, {}};
const AlgebraId kHat{AlgName::bcca_hat, {}};
const AlgebraId kO{AlgName::O, {}};
const AlgebraId kBuv{AlgName::b_uv, {}};
const AlgebraId kBUV{AlgName::b_UV, {}};

AlgebraId olam(const Rat& l) { return AlgebraId{AlgName::O_lambda, l}; }
AlgebraId flam(const Rat& l) { return AlgebraId{AlgName::f_lambda, l}; }

std::string num(long n) { return std::to_string(n); }

// Collects exact assertions and remembers the first failure for the report.
struct Checker {
  long checked = 0;
  bool ok = true;
  std::string first;

  bool require(bool cond, const std::string& what) {
    ++checked;
    if (!cond && ok) {
      ok = false;
      first = what;
    }
    return cond;
  }
};

using Details = std::vector<std::pair<std::string, std::string>>;

CheckReport finish(const std::string& id, const Checker& ck, Details details,
                   bool bounded = false) {
  CheckReport rep;
  rep.check_id = id;
  rep.status = !ck.ok ? "fail" : (bounded ? "bounded-evidence" : "pass");
  rep.details = std::move(details);
  rep.details.emplace_back("assertions", num(ck.checked));
  if (!ck.ok) rep.details.emplace_back("first-failure", ck.first);
  return rep;
}

Rat rv(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> n(-5, 5), d(1, 3);
  return Rat(n(rng), d(rng));
}

Rat rv_nonzero(std::mt19937_64& rng) {
  Rat r;
  while (r.is_zero()) r = rv(rng);
  return r;
}

std::mt19937_64 seeded(const VerifyOptions& opts, unsigned long long salt) {
  return std::mt19937_64(opts.seed * 1000003ull + salt);
}

ModLabel word_label(const std::vector<std::pair<Family, long>>& fs) {
  Monomial m;
  for (auto [f, i] : fs) m.factors.push_back(sym(f, i));
  return ModLabel{m, 0};
}

// Sum of the realizations of the non-central terms; nullopt if one is missing.
std::optional<LaurentPoly> realize_body(const AlgebraId& alg, const AlgElem& x) {
  LaurentPoly acc;
  for (const auto& [s, c] : x.terms()) {
    if (family_is_central(s.family)) continue;
    const auto img = laurent_realization(alg, s);
    if (!img) return std::nullopt;
    acc += c * *img;
  }
  return acc;
}

// Bracket of two realized basis symbols: vector fields bracket with each
// other and act on densities; densities commute.
LaurentPoly realized_bracket(const AlgebraId& alg, const BasisSymbol& a,
                             const BasisSymbol& b) {
  const LaurentPoly fa = *laurent_realization(alg, a);
  const LaurentPoly fb = *laurent_realization(alg, b);
  const bool da = family_is_density(a.family);
  const bool db = family_is_density(b.family);
  if (!da && !db) return lp_witt_bracket(fa, fb);
  if (!da && db) return lp_density_action(fa, fb);
  if (da && !db) return LaurentPoly() - lp_density_action(fb, fa);
  return LaurentPoly();
}

LaurentPoly lp_pow(const LaurentPoly& base, long e) {
  LaurentPoly acc = LaurentPoly::monomial(0, Rat(1));
  for (long i = 0; i < e; ++i) acc = acc * base;
  return acc;
}

LaurentPoly witt_realize(const AlgElem& x) {
  LaurentPoly acc;
  for (const auto& [s, c] : x.terms()) acc += c * *laurent_realization(kWitt, s);
  return acc;
}

std::vector<AlgElem> window_generators(const AlgebraId& alg, long window) {
  std::vector<AlgElem> gens;
  for (const auto& s : basis_window(alg, window)) {
    AlgElem e;
    e.add_raw(s, Rat(1));
    gens.push_back(e);
  }
  return gens;
}

WhittakerFn random_fn_b(std::mt19937_64& rng, long n) {
  std::map<long, Rat> u, v;
  for (long m = n; m <= 2 * n + 2; ++m) u[m] = rv(rng);
  for (long m = n; m <= 2 * n; ++m) v[m] = rv(rng);
  v[2 * n] = rv_nonzero(rng);
  return WhittakerFn('b', n, u, v);
}

WhittakerFn random_fn_O(std::mt19937_64& rng, long n) {
  std::map<long, Rat> u;
  for (long m = n; m <= 2 * n + 2; ++m) u[m] = rv(rng);
  while (u[2 * n + 2] == Rat(4) * u[2 * n]) u[2 * n + 2] = rv(rng);
  return WhittakerFn('O', n, u);
}

std::optional<Rat> rat_sqrt(const Rat& x) {
  if (x.sign() < 0) return std::nullopt;
  mpz_class n = x.num(), d = x.den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) ||
      !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  return Rat(sn) / Rat(sd);
}

// 01: the Jacobi identity across every bracket table.
CheckReport check_jacobi(const VerifyOptions& opts) {
  Checker ck;
  const std::vector<AlgebraId> algebras = {
      kWitt, kVir,          kBms,          kBcca,
      kHat,  kO,            olam(Rat(2)),  olam(Rat(-1)),
      olam(Rat(3, 5)),      kBuv,          kBUV};
  std::string names;
  for (const auto& alg : algebras) {
    if (!names.empty()) names += " ";
    names += alg.str();
    ck.require(jacobi_check(alg, opts.window), "jacobi fails for " + alg.str());
  }
  return finish("01-jacobi", ck,
                {{"window", num(opts.window)}, {"algebras", names}});
}

// 02: every bracket table against its Laurent realization, with the residue
// cocycle covering the central coefficients.
CheckReport check_laurent_oracle(const VerifyOptions& opts) {
  Checker ck;
  const std::vector<AlgebraId> algebras = {
      kWitt,         kVir,           kBms,          kBcca,
      kHat,          kO,             kBuv,          kBUV,
      olam(Rat(2)),  olam(Rat(-1)),  olam(Rat(3, 5)),
      flam(Rat(2)),  flam(Rat(-1)),  flam(Rat(3, 5))};
  long pairs = 0;
  for (const auto& alg : algebras) {
    const auto basis = basis_window(alg, opts.window);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = i; j < basis.size(); ++j) {
        const BasisSymbol a = basis[i], b = basis[j];
        // The hatted table tracks no span for the diagonal mixed pair.
        if (alg.name == AlgName::bcca_hat && a.index == b.index &&
            ((a.family == Family::O && b.family == Family::Ohat) ||
             (a.family == Family::Ohat && b.family == Family::O)))
          continue;
        ++pairs;
        const AlgElem lhs = bracket(alg, alg_sym(alg, a.family, a.index),
                                    alg_sym(alg, b.family, b.index));
        const std::string tag =
            alg.str() + " [" + symbol_str(a) + ", " + symbol_str(b) + "]";
        if (family_is_central(a.family) || family_is_central(b.family)) {
          ck.require(lhs.is_zero(), tag + " should vanish");
          continue;
        }
        const auto img = realize_body(alg, lhs);
        if (!ck.require(img.has_value(), tag + " has unrealizable terms"))
          continue;
        ck.require(*img == realized_bracket(alg, a, b),
                   tag + " disagrees with the realization");
        const bool da = family_is_density(a.family);
        const bool db = family_is_density(b.family);
        const auto cval = [&](Family f) { return lhs.coeff(sym(f)); };
        const auto cocycle = [&]() {
          return lp_vir_cocycle(*laurent_realization(alg, a),
                                *laurent_realization(alg, b));
        };
        switch (alg.name) {
          case AlgName::virasoro:
            ck.require(cval(Family::C) == cocycle(),
                       tag + " central differs from the residue cocycle");
            break;
          case AlgName::bms3:
            if (!da && !db) {
              ck.require(cval(Family::C_L) == cocycle() &&
                             cval(Family::C_M).is_zero(),
                         tag + " central differs from the residue cocycle");
            } else if (da != db) {
              ck.require(cval(Family::C_M) == cocycle() &&
                             cval(Family::C_L).is_zero(),
                         tag + " central differs from the residue cocycle");
            } else {
              ck.require(lhs.is_zero(), tag + " should vanish");
            }
            break;
          case AlgName::bcca_hat:
            if (da != db) {
              ck.require(cval(Family::C_M) == cocycle(),
                         tag + " central differs from the residue cocycle");
            } else if (!da && !db) {
              ck.require(cval(Family::C_M).is_zero(),
                         tag + " has a spurious central term");
            } else {
              ck.require(lhs.is_zero(), tag + " should vanish");
            }
            break;
          default:
            ck.require(lhs.coeff(sym(Family::C)).is_zero() &&
                           lhs.coeff(sym(Family::C_L)).is_zero() &&
                           lhs.coeff(sym(Family::C_M)).is_zero(),
                       tag + " has a central term in a centerless table");
            break;
        }
      }
    }
  }
  return finish("02-laurent-oracle", ck,
                {{"window", num(opts.window)},
                 {"algebras", num(static_cast<long>(algebras.size()))},
                 {"pairs", num(pairs)}});
}

// 03: the binomial change of basis u/v <-> O/P, against the product form of
// the realizations and the closed coefficient patterns.
CheckReport check_basis_change(const VerifyOptions&) {
  Checker ck;
  const LaurentPoly sum = LaurentPoly::monomial(1, Rat(1)) +
                          LaurentPoly::monomial(-1, Rat(1));  // t + 1/t
  const LaurentPoly neg_quad = LaurentPoly::monomial(2, Rat(-1)) +
                               LaurentPoly::monomial(0, Rat(1));  // -(t^2-1)
  for (long n = 1; n <= 20; ++n) {
    const AlgElem u = uv_from_OP(n, Family::u);
    ck.require(realize_body(kBcca, u) == lp_pow(sum, n - 1) * neg_quad,
               "u_" + num(n) + " misses its product form");
    for (const auto& [s, c] : u.terms()) {
      const long k = (n - s.index) / 2;
      ck.require(s.family == Family::O && s.index >= 1 &&
                     (n - s.index) % 2 == 0 && k >= 0 && 2 * k < n,
                 "u_" + num(n) + " has a stray term " + symbol_str(s));
      ck.require(c == rat_binom(n, k) * Rat(n - 2 * k) / Rat(n),
                 "u_" + num(n) + " coefficient pattern at O:" + num(s.index));
    }
    ck.require(to_uv_basis(u) == alg_sym(kBuv, Family::u, n),
               "u_" + num(n) + " fails its round trip");
    ck.require(to_op_basis(op_from_uv(n, Family::O)) ==
                   alg_sym(kBcca, Family::O, n),
               "O_" + num(n) + " fails its round trip");
  }
  for (long n = 0; n <= 20; ++n) {
    const AlgElem v = uv_from_OP(n, Family::v);
    ck.require(realize_body(kBcca, v) ==
                   LaurentPoly::monomial(1, Rat(-1)) * lp_pow(sum, n),
               "v_" + num(n) + " misses its product form");
    for (const auto& [s, c] : v.terms()) {
      const long k = (n - s.index) / 2;
      ck.require(s.family == Family::P && s.index >= 0 &&
                     (n - s.index) % 2 == 0 && k >= 0 && 2 * k <= n,
                 "v_" + num(n) + " has a stray term " + symbol_str(s));
      const Rat expect = s.index == 0 ? rat_binom(n, k) / Rat(2)
                                      : rat_binom(n, k);
      ck.require(c == expect,
                 "v_" + num(n) + " coefficient pattern at P:" + num(s.index));
    }
    ck.require(to_uv_basis(v) == alg_sym(kBuv, Family::v, n),
               "v_" + num(n) + " fails its round trip");
    ck.require(to_op_basis(op_from_uv(n, Family::P)) ==
                   alg_sym(kBcca, Family::P, n),
               "P_" + num(n) + " fails its round trip");
  }
  return finish("03-basis-change", ck,
                {{"u-range", "1..20"}, {"v-range", "0..20"}});
}

// 04: the closed central pairing in the u/v basis against the L/M expansion.
CheckReport check_central_pairing(const VerifyOptions&) {
  Checker ck;
  for (long n = 1; n <= 8; ++n) {
    for (long m = 0; m <= 8; ++m) {
      const std::string tag = "[u_" + num(n) + ", v_" + num(m) + "]";
      if ((n + m) % 2 == 0) {
        const CentralCase which = (n % 2 == 0) ? CentralCase::uv_even_even
                                               : CentralCase::uv_odd_odd;
        ck.require(central_term_uv(n, m, which) == central_term_lm_oracle(n, m),
                   tag + " closed form differs from the L/M expansion");
      } else {
        ck.require(central_term_lm_oracle(n, m).is_zero(),
                   tag + " should carry no central term");
      }
    }
  }
  for (long n = 1; n <= 8; ++n)
    for (long m = 1; m <= 8; ++m)
      if ((n + m) % 2 == 0)
        ck.require(central_term_uv(n, m, CentralCase::uu_even).is_zero(),
                   "[u, u] central should vanish");
  ck.require(central_term_uv(2, 2, CentralCase::uv_even_even) == Rat(1),
             "[u_2, v_2] spot value");
  return finish("04-central-pairing", ck,
                {{"index-range", "u 1..8, v 0..8"},
                 {"spot", "[u_2, v_2] -> 1*C_M"}});
}

// 05: abelianization dimensions of the filtration quotients.
CheckReport check_abelianization(const VerifyOptions&) {
  Checker ck;
  for (long n = -1; n <= 6; ++n) {
    ck.require(abelianization_dim(FiltrationScope::O, n, 2 * n + 8) == n + 3,
               "one-family level " + num(n) + " is not n + 3");
    ck.require(
        abelianization_dim(FiltrationScope::bcca_uv, n, 2 * n + 8) ==
            2 * n + 4,
        "two-family level " + num(n) + " is not 2n + 4");
  }
  return finish("05-abelianization", ck,
                {{"levels", "-1..6"}, {"windows", "stabilized at 2n + 8"}});
}

// 06: bracket containment for the index filtration, with the associated
// graded leading terms cancelled one level up.
CheckReport check_filtration(const VerifyOptions& opts) {
  Checker ck;
  const auto in_level = [](const AlgElem& x, long n) {
    for (const auto& [s, c] : x.terms()) {
      (void)c;
      if (s.index < n) return false;
    }
    return true;
  };
  const long w = opts.window;
  for (long n = -1; n <= w; ++n) {
    for (long m = -1; m <= w; ++m) {
      AlgElem uu = bracket(kBUV, alg_sym(kBUV, Family::U, n),
                           alg_sym(kBUV, Family::U, m));
      AlgElem uv = bracket(kBUV, alg_sym(kBUV, Family::U, n),
                           alg_sym(kBUV, Family::V, m));
      const std::string tag = "(" + num(n) + ", " + num(m) + ")";
      ck.require(in_level(uu, n + m) && in_level(uv, n + m),
                 "bracket leaves the filtration at " + tag);
      ck.require(bracket(kBUV, alg_sym(kBUV, Family::V, n),
                         alg_sym(kBUV, Family::V, m))
                     .is_zero(),
                 "[V, V] should vanish at " + tag);
      if (n != m) {
        uu += Rat(4 * (n - m)) * alg_sym(kBUV, Family::U, n + m);
        uv += Rat(4 * (n - m)) * alg_sym(kBUV, Family::V, n + m);
      }
      ck.require(in_level(uu, n + m + 1) && in_level(uv, n + m + 1),
                 "graded leading term at " + tag);
    }
  }
  // The tail of the derived subalgebra is reached explicitly.
  for (long m = -1; m <= w; ++m) {
    ck.require(bracket(kBUV, alg_sym(kBUV, Family::U, m),
                       alg_sym(kBUV, Family::V, m + 1)) ==
                   Rat(4) * alg_sym(kBUV, Family::V, 2 * m + 1),
               "V tail odd step at m = " + num(m));
    ck.require(bracket(kBUV, alg_sym(kBUV, Family::U, m),
                       alg_sym(kBUV, Family::V, m)) ==
                   alg_sym(kBUV, Family::V, 2 * m + 2),
               "V tail even step at m = " + num(m));
  }
  return finish("06-filtration", ck, {{"index-window", num(w)}});
}

// 07: on the locus M + (n^2 - 1) c_M / 24 = 0 the weight-n generators seed
// proper submodules; off it the module stays irreducible in every bounded
// probe we can run.
CheckReport check_massive_locus(const VerifyOptions& opts) {
  Checker ck;
  bool truncated = false;
  const Rat cm(24), cl(2), bs(5, 7);
  for (long n = 1; n <= 3; ++n) {
    const Rat bm = -Rat(n * n - 1);
    const auto spec = ModuleSpec::massive(bm, bs, cl, cm);
    ModuleEngine eng(spec);
    const ModVector oseed =
        eng.act(alg_sym(kHat, Family::O, n), mod_cyclic(spec));
    ck.require(!oseed.is_zero(), "O seed vanishes at n = " + num(n));
    const ClosureReport orep = submodule_closure(spec, {oseed}, 6, 6);
    ck.require(!orep.cyclic_in_span,
               "O_" + num(n) + " seed reaches the cyclic vector on the locus");
    truncated = truncated || orep.truncated;
    const auto gens = window_generators(kBms, 6);
    for (long sgn : {n, -n}) {
      const ModVector lseed =
          mod_basis(spec, word_label({{Family::L, sgn}}));
      const ClosureReport lrep = submodule_closure(spec, {lseed}, 6, 6, gens);
      ck.require(!lrep.cyclic_in_span,
                 "L_" + num(sgn) + " seed reaches the cyclic vector at n = " +
                     num(n));
      truncated = truncated || lrep.truncated;
    }
  }

  auto rng = seeded(opts, 7);
  for (int t = 0; t < 5; ++t) {
    Rat bm, cmr;
    const auto on_locus = [&]() {
      for (long k = 1; k <= 6; ++k)
        if ((bm + Rat(k * k - 1) * cmr / Rat(24)).is_zero()) return true;
      return false;
    };
    do {
      bm = rv_nonzero(rng);
      cmr = rv(rng);
    } while (on_locus());
    const Rat bs_sample = rv(rng);
    const Rat cl_sample = rv(rng);
    const auto spec = ModuleSpec::massive(bm, bs_sample, cl_sample, cmr);
    ModuleEngine eng(spec);
    for (long k = 1; k <= 3; ++k) {
      const ModVector seed =
          eng.act(alg_sym(kHat, Family::O, k), mod_cyclic(spec));
      ck.require(submodule_closure(spec, {seed}, 3, 3).cyclic_in_span,
                 "off locus O_" + num(k) + " seed misses the cyclic vector");
    }
    // No line through the degree-one vectors is invariant: M_{-1} and M_1
    // push span{L_1, L_-1} applied to the cyclic vector back onto it.
    const ModVector l1 = mod_basis(spec, word_label({{Family::L, 1}}));
    const ModVector lm1 = mod_basis(spec, word_label({{Family::L, -1}}));
    const ModVector cyc = mod_cyclic(spec);
    ck.require(eng.act(sym(Family::M, -1), l1) == Rat(-2) * bm * cyc,
               "M_-1 on L_1 misses -2M times the cyclic vector");
    ck.require(eng.act(sym(Family::M, -1), lm1).is_zero(),
               "M_-1 on L_-1 should vanish");
    ck.require(eng.act(sym(Family::M, 1), lm1) == Rat(2) * bm * cyc,
               "M_1 on L_-1 misses 2M times the cyclic vector");
    ck.require(eng.act(sym(Family::M, 1), l1).is_zero(),
               "M_1 on L_1 should vanish");
    const auto ann = whittaker_annihilator(
        kBms, {Family::L}, {Family::M},
        massive_quasi_character(bm, Rat(1), cmr), 6);
    ck.require(ann.size() == 1 && ann[0] == sym(Family::L, 0),
               "off-locus annihilator is not exactly L_0");
  }
  return finish("07-massive-locus", ck,
                {{"locus-levels", "1..3"},
                 {"closure-window", "weight 6, length 6"},
                 {"off-locus-samples", "5"},
                 {"degree-one-lines", "excluded exactly"}},
                truncated);
}

// 08: the parity splitting of the massive module and the closed action on
// the hatted generators.
CheckReport check_massive_parity(const VerifyOptions& opts) {
  Checker ck;
  auto rng = seeded(opts, 8);
  std::vector<std::array<Rat, 4>> samples;
  for (int t = 0; t < 5; ++t)
    samples.push_back({rv_nonzero(rng), rv(rng), rv(rng), rv(rng)});
  for (const auto& p : samples) {
    const ParityReport rep = massive_parity_split(p[0], p[1], p[2], p[3], 6);
    ck.require(rep.pass && rep.parity_preserved && rep.classes_span,
               "parity split fails at M = " + p[0].str());
  }
  for (long n : {1L, 2L}) {
    ck.require(massive_ohat_iso_check(samples[0][0], samples[0][1],
                                      samples[0][2], samples[0][3], n, 5),
               "hat intertwiner fails at n = " + num(n));
    ck.require(massive_ohat_iso_check(Rat(2), Rat(1, 3), Rat(1), Rat(5), n, 5),
               "hat intertwiner fails at the pinned sample, n = " + num(n));
  }
  // Closed forms of the ideal action on the hatted generators.
  for (const auto& p : {samples[1], std::array<Rat, 4>{Rat(2), Rat(1, 3),
                                                       Rat(1), Rat(5)}}) {
    const auto spec = ModuleSpec::massive(p[0], p[1], p[2], p[3]);
    ModuleEngine eng(spec);
    const ModVector cyc = mod_cyclic(spec);
    for (long n = 1; n <= 5; ++n) {
      const ModVector ohat = eng.act(alg_sym(kHat, Family::Ohat, n), cyc);
      for (long r = 0; r <= 5; ++r) {
        const ModVector pv = eng.act(alg_sym(kHat, Family::P, r), ohat);
        const ModVector expect_p = r == 0 ? Rat(2) * p[0] * ohat : ModVector{};
        ck.require(pv == expect_p, "P_" + num(r) + " on the hatted generator " +
                                       num(n));
        const ModVector phv = eng.act(alg_sym(kHat, Family::Phat, r), ohat);
        const ModVector expect_ph =
            r == n ? (Rat(4 * n) * p[0] +
                      Rat(n) * Rat(n * n - 1) / Rat(6) * p[3]) *
                         cyc
                   : ModVector{};
        ck.require(phv == expect_ph,
                   "Phat_" + num(r) + " on the hatted generator " + num(n));
      }
    }
  }
  return finish("08-massive-parity", ck,
                {{"parity-window", "6"},
                 {"intertwiner-weight", "5"},
                 {"samples", "5 random + 1 pinned"}});
}

// 09: whittaker reducibility witnesses in the degenerate cases and full
// cyclicity of short words otherwise.
CheckReport check_whittaker(const VerifyOptions& opts) {
  Checker ck;
  const auto witness_eigen = [&](const ModuleSpec& spec,
                                 const std::string& tag) {
    ModuleEngine eng(spec);
    const WhittakerFn& fn = *spec.fn;
    const long n = fn.level();
    const auto w = reducibility_witness(spec);
    if (!ck.require(w.has_value(), tag + ": witness missing")) return;
    if (n == 0)
      ck.require(eng.act(sym(Family::U, 0), *w) ==
                     (fn.u_value(0) - Rat(4)) * *w,
                 tag + ": U_0 eigenvalue");
    for (long m = (n == 0 ? 1 : n); m <= 2 * n + 6; ++m)
      ck.require(eng.act(sym(Family::U, m), *w) == fn.u_value(m) * *w,
                 tag + ": U_" + num(m) + " eigenvalue");
    if (fn.algebra() == 'b')
      for (long m = (n == 0 ? 0 : n); m <= 2 * n + 6; ++m)
        ck.require(eng.act(sym(Family::V, m), *w) == fn.v_value(m) * *w,
                   tag + ": V_" + num(m) + " eigenvalue");
    const ProbeResult ref =
        cyclicity_probe(spec, mod_basis(spec, word_label({{Family::U, -1}})),
                        2);
    ck.require(ref.status == ProbeStatus::refused && ref.witness == *w,
               tag + ": probe should refuse with the witness");
  };
  witness_eigen(
      ModuleSpec::whittaker_b(WhittakerFn(
          'b', 0, {{0, Rat(3)}, {1, Rat(5)}, {2, Rat(7)}}, {{0, Rat(0)}})),
      "b level 0");
  witness_eigen(ModuleSpec::whittaker_b(WhittakerFn(
                    'b', 1, {{1, Rat(2)}, {2, Rat(3)}, {3, Rat(5)}, {4, Rat(7)}},
                    {{1, Rat(0)}, {2, Rat(0)}})),
                "b level 1");
  witness_eigen(
      ModuleSpec::whittaker_b(WhittakerFn(
          'b', 2,
          {{2, Rat(1)}, {3, Rat(2)}, {4, Rat(3)}, {5, Rat(4)}, {6, Rat(5)}},
          {{2, Rat(6)}, {3, Rat(0)}, {4, Rat(0)}})),
      "b level 2");
  witness_eigen(ModuleSpec::whittaker_O(WhittakerFn(
                    'O', 0, {{0, Rat(2)}, {1, Rat(3)}, {2, Rat(8)}})),
                "O level 0");
  witness_eigen(ModuleSpec::whittaker_O(WhittakerFn(
                    'O', 1, {{1, Rat(1)}, {2, Rat(2)}, {3, Rat(4)}, {4, Rat(8)}})),
                "O level 1");
  witness_eigen(
      ModuleSpec::whittaker_O(WhittakerFn(
          'O', 2,
          {{2, Rat(3)}, {3, Rat(1)}, {4, Rat(5)}, {5, Rat(4)}, {6, Rat(20)}})),
      "O level 2");

  // Non-degenerate samples: every short word reduces to the cyclic vector,
  // and the recorded trace reproduces the reduction exactly.
  auto rng = seeded(opts, 9);
  long probes = 0;
  const auto drive = [&](const ModuleSpec& spec, const std::string& tag) {
    ModuleEngine eng(spec);
    const ModVector cyc = mod_cyclic(spec);
    for (const auto& label : mod_basis_window(spec, 4, 4)) {
      ++probes;
      const ModVector v = mod_basis(spec, label);
      const ProbeResult r = cyclicity_probe(spec, v, 4);
      if (!ck.require(r.status == ProbeStatus::reduced,
                      tag + ": probe fails on " + mod_label_str(spec, label)))
        continue;
      ck.require(!r.final_coeff.is_zero(),
                 tag + ": zero multiple on " + mod_label_str(spec, label));
      ModVector w = v;
      for (const auto& st : r.steps) w = eng.act(st.op, w) - st.shift * w;
      ck.require(w == r.final_vector && w == r.final_coeff * cyc,
                 tag + ": trace mismatch on " + mod_label_str(spec, label));
    }
  };
  for (long n = 0; n <= 2; ++n) {
    for (int t = 0; t < 5; ++t) {
      drive(ModuleSpec::whittaker_b(random_fn_b(rng, n)),
            "b level " + num(n) + " sample " + num(t));
      drive(ModuleSpec::whittaker_O(random_fn_O(rng, n)),
            "O level " + num(n) + " sample " + num(t));
    }
  }

  // Spot value: (U_1 - lambda_1) V_{-1} . 1 = -8 mu_0 . 1 at level 0.
  const Rat l1(5), mu0(2);
  const auto spot = ModuleSpec::whittaker_b(
      WhittakerFn('b', 0, {{0, Rat(3)}, {1, l1}, {2, Rat(7)}}, {{0, mu0}}));
  ModuleEngine seng(spot);
  const ModVector sv = mod_basis(spot, word_label({{Family::V, -1}}));
  ck.require(seng.act(sym(Family::U, 1), sv) - l1 * sv ==
                 Rat(-8) * mu0 * mod_cyclic(spot),
             "level-0 spot reduction");
  return finish("09-whittaker", ck,
                {{"levels", "0..2"},
                 {"samples", "5 per level and family"},
                 {"word-length", "4"},
                 {"probes", num(probes)}});
}

// 10: the polynomial module over O(lambda): cyclic for generic lambda, with
// the degree filtration surviving at the self-square points.
CheckReport check_omega(const VerifyOptions&) {
  Checker ck;
  const auto spec = ModuleSpec::omega(Rat(2), Rat(1));
  ModuleEngine eng(spec);
  const ModVector cyc = mod_cyclic(spec);
  for (long d = 1; d <= 6; ++d) {
    const ModVector v = mod_basis(spec, ModLabel{{}, d});
    const ProbeResult r = cyclicity_probe(spec, v, d);
    if (!ck.require(r.status == ProbeStatus::reduced,
                    "degree " + num(d) + " does not reduce"))
      continue;
    ck.require(!r.final_coeff.is_zero(), "degree " + num(d) + " zero multiple");
    ModVector w = v;
    for (const auto& st : r.steps) w = eng.act(st.op, w) - st.shift * w;
    ck.require(w == r.final_vector && w == r.final_coeff * cyc,
               "degree " + num(d) + " trace mismatch");
  }
  const ProbeResult mixed = cyclicity_probe(
      ModuleSpec::omega(Rat(3, 2), Rat(-2)),
      [] {
        ModVector m;
        m.add_term(ModLabel{{}, 3}, Rat(2, 7));
        m.add_term(ModLabel{{}, 1}, Rat(-4));
        return m;
      }(),
      3);
  ck.require(mixed.status == ProbeStatus::reduced &&
                 mixed.final_coeff == Rat(-2) * Rat(2, 7),
             "mixed vector leading-coefficient reduction");
  const ProbeResult at_one = cyclicity_probe(
      ModuleSpec::omega(Rat(1), Rat(1)), mod_basis(spec, ModLabel{{}, 2}), 2);
  ck.require(at_one.status == ProbeStatus::refused,
             "lambda = 1 should refuse the probe");
  for (const Rat& lam : {Rat(1), Rat(-1)})
    for (const Rat& a : {Rat(1), Rat(2, 3)})
      ck.require(omega_degree_filtration_check(lam, a, 8),
                 "degree filtration fails at lambda = " + lam.str() +
                     ", a = " + a.str());
  return finish("10-omega", ck,
                {{"generation-degrees", "1..6"},
                 {"filtration-degree", "8"},
                 {"filtration-points", "lambda = 1, -1"}});
}

// 11: the bilinear-form determinant against its superfactorial product form.
CheckReport check_tau(const VerifyOptions&) {
  Checker ck;
  const std::vector<Rat> mus = {Rat(2), Rat(3), Rat(-1), Rat(5, 7)};
  for (const auto conv : {TauConvention::kStandard, TauConvention::kShifted}) {
    for (const Rat& mu : mus) {
      for (long r = 1; r <= 4; ++r) {
        for (long u = 0; u <= 3; ++u) {
          const Rat d = tau_direct(mu, r, u, conv);
          const std::string tag = "(mu = " + mu.str() + ", r = " + num(r) +
                                  ", u = " + num(u) + ")";
          ck.require(d == tau_formula(mu, r, u, conv),
                     "determinant differs from the product form at " + tag);
          ck.require(!d.is_zero(), "determinant vanishes at " + tag);
        }
      }
    }
  }
  for (const Rat& mu : mus)
    for (long r = 1; r <= 4; ++r)
      for (long u = 0; u <= 3; ++u)
        ck.require(tau_direct(mu, r, u, TauConvention::kShifted) ==
                       tau_direct(mu, r, u + 1, TauConvention::kStandard),
                   "convention shift is not a unit step in u");
  ck.require(tau_direct(Rat(5), 1, 0, TauConvention::kStandard) == Rat(4),
             "r = 1 spot value");
  ck.require(tau_direct(Rat(2), 2, 0, TauConvention::kStandard) == Rat(2),
             "r = 2 spot value");
  ck.require(superfactorial(3) == Rat(12), "superfactorial spot value");
  return finish("11-tau", ck,
                {{"ranges", "r 1..4, u 0..3, mu {2, 3, -1, 5/7}"},
                 {"conventions", "shifted(u) = standard(u + 1)"}});
}

// 12: the local-function solver round-trips random evaluation data and its
// order equivalences hold in both directions.
CheckReport check_localfn(const VerifyOptions& opts) {
  Checker ck;
  auto rng = seeded(opts, 12);
  for (long n = 0; n <= 4; ++n) {
    for (int t = 0; t < 5; ++t) {
      std::map<long, Rat> u;
      for (long m = n; m <= 2 * n + 2; ++m) u[m] = rv(rng);
      const WhittakerFn phi('O', n, u);
      const LocalSolveReport rep = solve_whittaker_local(phi);
      const std::string tag = "level " + num(n) + " sample " + num(t);
      for (long k = n; k <= 2 * n + 8; ++k)
        ck.require(eval_local(rep.chi, u_field_poly(k)) == phi.u_value(k),
                   tag + ": round trip at k = " + num(k));
      ck.require(rep.alpha.size() == static_cast<std::size_t>(2 * n + 2) &&
                     rep.alpha[0] == Rat(1),
                 tag + ": alpha normalization");
      for (long i = 1; i <= n; ++i)
        ck.require(rep.alpha[i].is_zero(), tag + ": free alpha band");
      ck.require(rep.alpha_top_nonzero == !rep.alpha[2 * n + 1].is_zero(),
                 tag + ": top-order flag");
      ck.require(rep.even_step_differs ==
                     (phi.u_value(2 * n + 2) != Rat(4) * phi.u_value(2 * n)),
                 tag + ": even-step comparison");
      ck.require(rep.alpha_top_nonzero == rep.even_step_differs,
                 tag + ": top order iff the even step differs");
      if (n >= 1) {
        ck.require(rep.alpha_subtop_nonzero == !rep.alpha[2 * n].is_zero(),
                   tag + ": subtop-order flag");
        ck.require(
            rep.odd_step_differs ==
                (phi.u_value(2 * n + 1) != Rat(4) * phi.u_value(2 * n - 1)),
            tag + ": odd-step comparison");
        ck.require(rep.alpha_subtop_nonzero == rep.odd_step_differs,
                   tag + ": subtop order iff the odd step differs");
      }
    }
  }
  return finish("12-localfn", ck,
                {{"levels", "0..4"},
                 {"samples", "5 per level"},
                 {"round-trip", "k up to 2n + 8"}});
}

// 13: restrictions of highest weight modules to the index-shifted
// subalgebras are free, up to the two pinned cyclic relations.
CheckReport check_verma(const VerifyOptions& opts) {
  Checker ck;
  auto rng = seeded(opts, 13);
  for (int t = 0; t < 3; ++t) {
    const Rat h = rv(rng), c = rv(rng);
    const FreenessReport r =
        restriction_freeness_check(ModuleSpec::verma_vir(h, c), kO, 6);
    ck.require(r.free && r.cumulative_rank == r.expected_rank,
               "one-family restriction not free at h = " + h.str());
  }
  for (int t = 0; t < 3; ++t) {
    const Rat hl = rv(rng), hm = rv(rng), cl = rv(rng), cm = rv(rng);
    const auto spec = ModuleSpec::verma_bms(hl, hm, cl, cm);
    const FreenessReport r = restriction_freeness_check(spec, kHat, 4);
    ck.require(r.free && r.cumulative_rank == r.expected_rank,
               "two-family restriction not free at h_M = " + hm.str());
    // The quotiented relations are exactly P_0 - 2 h_M and C_M - c_M.
    ModuleEngine eng(spec);
    const ModVector hw = mod_cyclic(spec);
    const AlgElem p0_hat = hat_to_bms(alg_sym(kHat, Family::P, 0));
    AlgElem p0;
    for (const auto& [s, cc] : p0_hat.terms())
      alg_insert(kBms, p0, s.family, s.index, cc);
    ck.require(eng.act(p0, hw) == Rat(2) * hm * hw,
               "P_0 relation at h_M = " + hm.str());
    ck.require(eng.act(alg_sym(kBms, Family::C_M), hw) == cm * hw,
               "C_M relation at c_M = " + cm.str());
  }
  return finish("13-verma", ck,
                {{"one-family-weight", "6"},
                 {"two-family-weight", "4"},
                 {"samples", "3 + 3 random"},
                 {"relations", "P_0 - 2h_M, C_M - c_M"}});
}

// 14: two elements generate the whole Witt algebra off the square locus, and
// the closed forms of the derived family hold identically in the parameters.
CheckReport check_appendix(const VerifyOptions& opts) {
  Checker ck;
  for (const auto& [lam, mu] : std::vector<std::pair<Rat, Rat>>{
           {Rat(1), Rat(2)}, {Rat(2), Rat(1)}, {Rat(3), Rat(5)}}) {
    const auto probe = appendix_probe(lam, mu, opts.depth, 6);
    const std::string tag =
        "(lambda = " + lam.str() + ", mu = " + mu.str() + ")";
    ck.require(!probe.singular && probe.closed_forms_ok,
               tag + ": probe should be regular");
    for (long n = -3; n <= 3; ++n)
      ck.require(probe.generated.count(n) == 1,
                 tag + ": index " + num(n) + " not generated");
  }
  for (const auto& [lam, mu] : std::vector<std::pair<Rat, Rat>>{
           {Rat(1), Rat(1)}, {Rat(2), Rat(4)}, {Rat(3), Rat(9)}}) {
    const auto probe = appendix_probe(lam, mu, opts.depth, 6);
    ck.require(probe.singular && !probe.family.has_value() &&
                   probe.generated.empty(),
               "mu = lambda^2 should confine the closure at lambda = " +
                   lam.str());
  }

  // Closed forms, identically in the parameters. Each side is scaled by the
  // smallest factor clearing the construction's denominators, so both are
  // polynomial of degree <= 4 per parameter and the grid is a certificate.
  const std::vector<Exclusion> off_locus = {
      [](const ParamValues& v) { return v.at("lambda").is_zero(); },
      [](const ParamValues& v) { return v.at("mu").is_zero(); },
      [](const ParamValues& v) {
        return v.at("mu") == v.at("lambda") * v.at("lambda");
      }};
  const auto scaled = [](const ParamValues& v, const AlgElem& x,
                         bool with_lambda) {
    const Rat lam = v.at("lambda");
    const Rat factor = lam * lam - v.at("mu");
    return witt_realize((with_lambda ? lam * factor : factor) * x);
  };
  const ParamExpr ym1_lhs = [&](const ParamValues& v) {
    return scaled(v, build_appendix_family(v.at("lambda"), v.at("mu")).ym1,
                  true);
  };
  const ParamExpr ym1_rhs = [&](const ParamValues& v) {
    const Rat lam = v.at("lambda");
    const Rat mu = v.at("mu");
    AlgElem closed;
    alg_insert(kWitt, closed, Family::L, -1, Rat(1));
    alg_insert(kWitt, closed, Family::L, -3, Rat(3) * mu / (Rat(16) * lam));
    alg_insert(kWitt, closed, Family::L, -5, mu * Rat(1, 16));
    return scaled(v, closed, true);
  };
  ck.require(identity_test(ym1_lhs, ym1_rhs, {{"lambda", 4}, {"mu", 4}},
                           414213u, off_locus),
             "closed form of the degree minus-one corrector");
  const ParamExpr z_lhs = [&](const ParamValues& v) {
    return scaled(v, build_appendix_family(v.at("lambda"), v.at("mu")).z,
                  false);
  };
  const ParamExpr z_rhs = [&](const ParamValues& v) {
    const Rat lam = v.at("lambda");
    const Rat mu = v.at("mu");
    AlgElem closed;
    alg_insert(kWitt, closed, Family::L, 0, Rat(2) * lam);
    alg_insert(kWitt, closed, Family::L, -2, Rat(3, 4) * mu);
    alg_insert(kWitt, closed, Family::L, -6, -(lam * lam * mu * Rat(1, 4)));
    return scaled(v, closed, false);
  };
  ck.require(identity_test(z_lhs, z_rhs, {{"lambda", 4}, {"mu", 4}}, 732050u,
                           off_locus),
             "closed form of the degree-zero generator");
  return finish("14-appendix", ck,
                {{"depth", num(opts.depth)},
                 {"window", "6"},
                 {"regular-pairs", "(1,2) (2,1) (3,5)"},
                 {"singular-pairs", "(1,1) (2,4) (3,9)"},
                 {"parameter-degree", "4"}});
}

// 15: the square-ratio isomorphism criterion, with the explicit rescaling
// realizing each positive case.
CheckReport check_iso_rescale(const VerifyOptions&) {
  Checker ck;
  const std::vector<std::tuple<Rat, Rat, bool>> pairs = {
      {Rat(1), Rat(4), true},    {Rat(1), Rat(-1), false},
      {Rat(5, 7), Rat(5, 7), true}, {Rat(9, 2), Rat(2), true},
      {Rat(2), Rat(1), false},   {Rat(3), Rat(5), false},
      {Rat(4), Rat(1), true},    {Rat(9), Rat(4), true},
      {Rat(1), Rat(2), false},   {Rat(-1), Rat(-4), true},
      {Rat(-1), Rat(1), false},  {Rat(8), Rat(2), true},
      {Rat(18), Rat(2), true},   {Rat(50), Rat(2), true},
      {Rat(2), Rat(3), false},   {Rat(7), Rat(28), true},
      {Rat(5), Rat(45), true},   {Rat(3), Rat(-3), false},
      {Rat(1, 4), Rat(1), true}, {Rat(5), Rat(7), false}};
  long rescalings = 0;
  for (const auto& [lam, mu, expect] : pairs) {
    const std::string tag =
        "(lambda = " + lam.str() + ", mu = " + mu.str() + ")";
    ck.require(o_lambda_iso(lam, mu) == expect, tag + ": criterion value");
    ck.require(o_lambda_iso(mu, lam) == expect, tag + ": symmetry");
    const auto alpha = rat_sqrt(lam / mu);
    ck.require(alpha.has_value() == expect, tag + ": rational square root");
    if (!alpha) continue;
    // f(t) -> f(alpha t) carries the lambda realization onto alpha^{s+1}
    // times the mu realization, generator by generator.
    ++rescalings;
    for (long s = 1; s <= 6; ++s) {
      const LaurentPoly p_lam =
          *laurent_realization(flam(lam), sym(Family::f, s));
      const LaurentPoly p_mu =
          *laurent_realization(flam(mu), sym(Family::f, s));
      ck.require(p_lam.scale_var(*alpha) == alpha->pow(s + 1) * p_mu,
                 tag + ": rescaling at s = " + num(s));
    }
  }
  return finish("15-iso-rescale", ck,
                {{"pairs", num(static_cast<long>(pairs.size()))},
                 {"rescaled-pairs", num(rescalings)},
                 {"generators", "s = 1..6"}});
}

using CheckFn = CheckReport (*)(const VerifyOptions&);

struct CheckEntry {
  const char* id;
  const char* group;
  CheckFn fn;
};

const CheckEntry kChecks[] = {
    {"01-jacobi", "jacobi", check_jacobi},
    {"02-laurent-oracle", "jacobi", check_laurent_oracle},
    {"03-basis-change", "basis", check_basis_change},
    {"04-central-pairing", "central", check_central_pairing},
    {"05-abelianization", "filtration", check_abelianization},
    {"06-filtration", "filtration", check_filtration},
    {"07-massive-locus", "massive", check_massive_locus},
    {"08-massive-parity", "massive", check_massive_parity},
    {"09-whittaker", "whittaker", check_whittaker},
    {"10-omega", "omega", check_omega},
    {"11-tau", "tau", check_tau},
    {"12-localfn", "localfn", check_localfn},
    {"13-verma", "verma", check_verma},
    {"14-appendix", "appendix", check_appendix},
    {"15-iso-rescale", "basis", check_iso_rescale},
};

}  // namespace

std::vector<std::string> verify_groups() {
  return {"all",     "jacobi", "basis",  "filtration", "central", "whittaker",
          "massive", "omega",  "localfn", "tau",       "appendix", "verma"};
}

std::vector<CheckReport> run_verify(const std::string& group,
                                    const VerifyOptions& opts) {
  const auto groups = verify_groups();
  if (std::find(groups.begin(), groups.end(), group) == groups.end())
    throw DomainError("unknown verify group: " + group);
  if (opts.window < 1) throw DomainError("verify window must be positive");
  if (opts.depth < 1) throw DomainError("verify depth must be positive");
  std::vector<CheckReport> out;
  for (const auto& entry : kChecks) {
    if (group != "all" && group != entry.group) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckReport rep;
    try {
      rep = entry.fn(opts);
    } catch (const std::exception& e) {
      rep.check_id = entry.id;
      rep.status = "fail";
      rep.details = {{"error", e.what()}};
    }
    rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace bcca
