#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <random>
#include <vector>

#include "bcca/algebra.hpp"
#include "bcca/basischange.hpp"
#include "bcca/identity.hpp"

using namespace bcca;

namespace {

const AlgebraId kWitt{AlgName::witt, {}};
const AlgebraId kVir{AlgName::virasoro, {}};
const AlgebraId kBms{AlgName::bms3, {}};
const AlgebraId kBcca{AlgName::bcca, {}};
const AlgebraId kBccaHat{AlgName::bcca_hat, {}};
const AlgebraId kO{AlgName::O, {}};
const AlgebraId kBuv{AlgName::b_uv, {}};
const AlgebraId kBUV{AlgName::b_UV, {}};

AlgebraId olam(const Rat& l) { return AlgebraId{AlgName::O_lambda, l}; }
AlgebraId flam(const Rat& l) { return AlgebraId{AlgName::f_lambda, l}; }

AlgElem br(const AlgebraId& alg, const std::string& x, const std::string& y) {
  return bracket(alg, alg_parse(alg, x), alg_parse(alg, y));
}

// Sum of the realizations of all terms; nullopt if any term has none.
std::optional<LaurentPoly> realize(const AlgebraId& alg, const AlgElem& x) {
  LaurentPoly acc;
  for (const auto& [s, c] : x.terms()) {
    const auto img = laurent_realization(alg, s);
    if (!img) return std::nullopt;
    acc += c * *img;
  }
  return acc;
}

// Bracket of two realized basis symbols: vector fields bracket with each
// other and act on densities; densities commute.
LaurentPoly realized_bracket(const AlgebraId& alg, const BasisSymbol& a, const BasisSymbol& b) {
  const LaurentPoly fa = *laurent_realization(alg, a);
  const LaurentPoly fb = *laurent_realization(alg, b);
  const bool da = family_is_density(a.family);
  const bool db = family_is_density(b.family);
  if (!da && !db) return lp_witt_bracket(fa, fb);
  if (!da && db) return lp_density_action(fa, fb);
  if (da && !db) return LaurentPoly() - lp_density_action(fb, fa);
  return LaurentPoly();
}

}  // namespace

TEST_CASE("bracket tables reproduce pinned values") {
  CHECK(br(kBcca, "1*O:2", "1*O:3").str() == "-1*O:5 + 5*O:1");
  CHECK(br(kO, "1*O:2", "1*O:3").str() == "-1*O:5 + 5*O:1");
  CHECK(br(kBcca, "1*O:1", "1*P:1").str() == "2*P:0");
  CHECK(br(kBccaHat, "1*O:1", "1*P:1").str() == "2*P:0");
  CHECK(br(kBuv, "1*u:1", "1*v:0").str() == "1*v:1");
  CHECK(br(kWitt, "1*L:1", "1*L:-1").str() == "2*L:0");
  CHECK(br(kVir, "1*L:2", "1*L:-2").str() == "4*L:0 + 1/2*C");
  CHECK(br(kBms, "1*L:2", "1*L:-2").str() == "4*L:0 + 1/2*C_L");
  CHECK(br(kBms, "1*L:2", "1*M:-2").str() == "4*M:0 + 1/2*C_M");
  CHECK(br(kBms, "1*M:2", "1*M:-2").is_zero());
  CHECK(br(kBUV, "1*U:1", "1*U:2").str() == "-1*U:5 + 4*U:3");
  CHECK(br(flam(Rat(3)), "1*f:1", "1*f:2").str() == "-1*f:3 + 12*f:1");
  CHECK(br(olam(Rat(2)), "1*Olam:1", "1*Olam:2").str() == "-1*Olam:3 + 6*Olam:1");

  // The central term on the diagonal [O:n, P:n] doubles the Witt cocycle.
  CHECK(br(kBccaHat, "1*O:2", "1*P:2").coeff(sym(Family::C_M)) == Rat(1));
  CHECK(br(kBccaHat, "1*O:3", "1*P:3").coeff(sym(Family::C_M)) == Rat(4));
  CHECK(br(kBccaHat, "1*O:2", "1*P:2").str() == "4*P:0 + 1*C_M");
  CHECK(br(kBcca, "1*O:2", "1*P:2").str() == "4*P:0");

  SUBCASE("bilinearity and antisymmetry spot checks") {
    const AlgElem x = alg_parse(kBcca, "2*O:1 + -1/3*O:4");
    const AlgElem y = alg_parse(kBcca, "1*P:0 + 5*P:2");
    CHECK(bracket(kBcca, x, y) == -bracket(kBcca, y, x));
    CHECK(bracket(kBcca, x + y, y) == bracket(kBcca, x, y));
  }
}

TEST_CASE("index normalization at insertion") {
  CHECK(alg_sym(kBcca, Family::O, -3).str() == "-1*O:3");
  CHECK(alg_sym(kBcca, Family::O, 0).is_zero());
  CHECK(alg_sym(kBcca, Family::P, -2).str() == "1*P:2");
  CHECK(alg_sym(kBccaHat, Family::Phat, 0).is_zero());
  CHECK(alg_sym(kBccaHat, Family::Phat, -2).str() == "-1*Phat:2");
  CHECK(alg_sym(kBccaHat, Family::Ohat, -2).str() == "1*Ohat:2");
  CHECK(alg_sym(kBccaHat, Family::Ohat, 0).str() == "1*Ohat:0");
  CHECK(alg_sym(olam(Rat(3)), Family::Olam, -2).str() == "-1/9*Olam:2");
  CHECK(alg_sym(olam(Rat(3)), Family::Olam, 0).is_zero());
  CHECK_THROWS_AS(alg_sym(kBuv, Family::u, 0), DomainError);
  CHECK_THROWS_AS(alg_sym(kBuv, Family::v, -1), DomainError);
  CHECK_THROWS_AS(alg_sym(kBUV, Family::U, -2), DomainError);
  CHECK_THROWS_AS(alg_sym(kWitt, Family::O, 1), DomainError);
  CHECK_THROWS_AS(alg_sym(flam(Rat(1)), Family::f, 0), DomainError);
}

TEST_CASE("algebra ids parse and validate lambda") {
  CHECK(AlgebraId::parse("bcca").name == AlgName::bcca);
  CHECK(AlgebraId::parse("b_UV").name == AlgName::b_UV);
  CHECK(AlgebraId::parse("O_lambda", Rat(2)).lambda == Rat(2));
  CHECK_THROWS_AS(AlgebraId::parse("O_lambda"), DomainError);
  CHECK_THROWS_AS(AlgebraId::parse("O_lambda", Rat(0)), DomainError);
  CHECK_THROWS_AS(AlgebraId::parse("witt", Rat(2)), DomainError);
  CHECK_THROWS_AS(AlgebraId::parse("nope"), DomainError);
}

TEST_CASE("jacobi identity holds across the bracket tables") {
  CHECK(jacobi_check(kBcca, 12));
  CHECK(jacobi_check(kBccaHat, 12));
  CHECK(jacobi_check(kWitt, 1));
  CHECK(jacobi_check(kWitt, 6));
  CHECK(jacobi_check(kVir, 6));
  CHECK(jacobi_check(kBms, 6));
  CHECK(jacobi_check(kO, 8));
  CHECK(jacobi_check(kBuv, 8));
  CHECK(jacobi_check(kBUV, 6));
  CHECK(jacobi_check(olam(Rat(2)), 6));
  CHECK(jacobi_check(olam(Rat(-1, 3)), 6));
  CHECK(jacobi_check(flam(Rat(-2)), 6));
}

TEST_CASE("change of basis between u/v and O/P") {
  CHECK(uv_from_OP(1, Family::u).str() == "1*O:1");
  CHECK(uv_from_OP(3, Family::u).str() == "1*O:3 + 1*O:1");
  CHECK(uv_from_OP(2, Family::v).str() == "1*P:2 + 1*P:0");
  CHECK(uv_from_OP(0, Family::v).str() == "1/2*P:0");
  CHECK(uv_from_OP(1, Family::v).str() == "1*P:1");

  SUBCASE("round trips up to index 20") {
    for (long n = 1; n <= 20; ++n) {
      CHECK(to_uv_basis(uv_from_OP(n, Family::u)) == alg_sym(kBuv, Family::u, n));
      CHECK(to_op_basis(op_from_uv(n, Family::O)) == alg_sym(kBcca, Family::O, n));
    }
    for (long n = 0; n <= 20; ++n) {
      CHECK(to_uv_basis(uv_from_OP(n, Family::v)) == alg_sym(kBuv, Family::v, n));
      CHECK(to_op_basis(op_from_uv(n, Family::P)) == alg_sym(kBcca, Family::P, n));
    }
  }

  SUBCASE("the u-to-O matrix is unitriangular") {
    for (long n = 1; n <= 12; ++n) {
      CHECK(uv_from_OP(n, Family::u).coeff(sym(Family::O, n)) == Rat(1));
      CHECK(op_from_uv(n, Family::O).coeff(sym(Family::u, n)) == Rat(1));
    }
  }

  SUBCASE("basis change intertwines the brackets") {
    for (long n = 1; n <= 6; ++n) {
      for (long m = 1; m <= 6; ++m) {
        if (n == m) continue;
        const AlgElem lhs = bracket(kBcca, uv_from_OP(n, Family::u), uv_from_OP(m, Family::u));
        const AlgElem rhs = to_op_basis(br(kBuv, "1*u:" + std::to_string(n), "1*u:" + std::to_string(m)));
        CHECK(lhs == rhs);
      }
      for (long m = 0; m <= 6; ++m) {
        const AlgElem lhs = bracket(kBcca, uv_from_OP(n, Family::u), uv_from_OP(m, Family::v));
        const AlgElem rhs = to_op_basis(br(kBuv, "1*u:" + std::to_string(n), "1*v:" + std::to_string(m)));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("central pairing in the u/v basis") {
  CHECK(central_term_uv(2, 2, CentralCase::uv_even_even) == Rat(1));
  CHECK(central_term_uv(1, 1, CentralCase::uv_odd_odd) == Rat(0));
  CHECK(central_term_uv(2, 1, CentralCase::uv_even_even) == Rat(0));
  CHECK(central_term_uv(5, 3, CentralCase::uu_even) == Rat(0));

  SUBCASE("closed-form sums agree with the L/M expansion") {
    for (long n = 1; n <= 8; ++n) {
      for (long m = 0; m <= 8; ++m) {
        const CentralCase which =
            (n % 2 == 0) ? CentralCase::uv_even_even : CentralCase::uv_odd_odd;
        CHECK(central_term_uv(n, m, which) == central_term_lm_oracle(n, m));
      }
    }
  }
}

TEST_CASE("square-ratio isomorphism test") {
  CHECK(o_lambda_iso(Rat(1), Rat(4)));
  CHECK_FALSE(o_lambda_iso(Rat(1), Rat(-1)));
  CHECK(o_lambda_iso(Rat(5, 7), Rat(5, 7)));
  CHECK(o_lambda_iso(Rat(9, 2), Rat(2)));
  CHECK_FALSE(o_lambda_iso(Rat(2), Rat(1)));
  CHECK_FALSE(o_lambda_iso(Rat(3), Rat(5)));
  CHECK_THROWS_AS(o_lambda_iso(Rat(0), Rat(1)), DomainError);
  CHECK_THROWS_AS(o_lambda_iso(Rat(1), Rat(0)), DomainError);
}

TEST_CASE("bracket tables agree with the vector-field realization") {
  std::vector<AlgebraId> algebras = {kWitt, kO, kBcca, kBuv,
                                     olam(Rat(2)), olam(Rat(-1)), olam(Rat(1, 4)),
                                     flam(Rat(1)), flam(Rat(-3)), flam(Rat(2, 5))};
  for (const auto& alg : algebras) {
    const auto basis = basis_window(alg, 10);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = i; j < basis.size(); ++j) {
        const AlgElem lhs =
            bracket(alg, alg_sym(alg, basis[i].family, basis[i].index),
                    alg_sym(alg, basis[j].family, basis[j].index));
        const auto img = realize(alg, lhs);
        REQUIRE(img.has_value());
        CHECK(*img == realized_bracket(alg, basis[i], basis[j]));
      }
    }
  }
}

TEST_CASE("shifted U/V realization agrees in both coordinates") {
  const auto basis = basis_window(kBUV, 8);
  SUBCASE("t coordinate") {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = i; j < basis.size(); ++j) {
        const AlgElem lhs =
            bracket(kBUV, alg_sym(kBUV, basis[i].family, basis[i].index),
                    alg_sym(kBUV, basis[j].family, basis[j].index));
        const auto img = realize(kBUV, lhs);
        REQUIRE(img.has_value());
        CHECK(*img == realized_bracket(kBUV, basis[i], basis[j]));
      }
    }
  }

  SUBCASE("s coordinate, with the square-root density twist") {
    const auto s_vec = [](long n) {
      // U_n as a vector field: -s^{n+1} (s^2 - 4) d/ds
      return LaurentPoly::monomial(n + 1, Rat(-1)) *
             (LaurentPoly::monomial(2, Rat(1)) + LaurentPoly::monomial(0, Rat(-4)));
    };
    const auto s_gpart = [](long n) { return LaurentPoly::monomial(n + 1, Rat(-1)); };
    const auto map_result = [&](const AlgElem& x, bool density) {
      LaurentPoly acc;
      for (const auto& [sy, c] : x.terms()) {
        acc += c * (density ? s_gpart(sy.index) : s_vec(sy.index));
      }
      return acc;
    };
    for (long n = -1; n <= 6; ++n) {
      for (long m = -1; m <= 6; ++m) {
        const AlgElem uu = bracket(kBUV, alg_sym(kBUV, Family::U, n), alg_sym(kBUV, Family::U, m));
        CHECK(map_result(uu, false) == lp_witt_bracket(s_vec(n), s_vec(m)));
        const AlgElem uv = bracket(kBUV, alg_sym(kBUV, Family::U, n), alg_sym(kBUV, Family::V, m));
        CHECK(map_result(uv, true) == lp_sqrt_twisted_action(s_gpart(n), s_gpart(m)));
      }
    }
  }
}

TEST_CASE("u/v bracket agrees with the square-root twisted picture") {
  // u_n maps to the field -t^{n-1} (t^2 - 4) d/dt and v_m to the twisted
  // density -t^m sqrt(t^2-4) dt^-1; this is the lambda = 1 specialization
  // after rescaling t.
  const auto g_of_u = [](long n) { return LaurentPoly::monomial(n - 1, Rat(-1)); };
  const auto p_of_v = [](long m) { return LaurentPoly::monomial(m, Rat(-1)); };
  for (long n = 1; n <= 8; ++n) {
    for (long m = 0; m <= 8; ++m) {
      const AlgElem uv = bracket(kBuv, alg_sym(kBuv, Family::u, n), alg_sym(kBuv, Family::v, m));
      LaurentPoly mapped;
      for (const auto& [sy, c] : uv.terms()) mapped += c * p_of_v(sy.index);
      CHECK(mapped == lp_sqrt_twisted_action(g_of_u(n), p_of_v(m)));
    }
  }
}

TEST_CASE("ulam expands through Olam with binomial weights") {
  // -(t + lambda/t)^{n-1} (t^2 - lambda) equals
  // Olam_n + sum_k C(n,k) (1 - 2k/n) lambda^k Olam_{n-2k}.
  for (long n = 1; n <= 7; ++n) {
    const ParamExpr lhs = [n](const ParamValues& vals) {
      const AlgebraId ctx{AlgName::O_lambda, vals.at("lambda")};
      return *laurent_realization(ctx, sym(Family::ulam, n));
    };
    const ParamExpr rhs = [n](const ParamValues& vals) {
      const Rat lam = vals.at("lambda");
      const AlgebraId ctx{AlgName::O_lambda, lam};
      LaurentPoly acc = *laurent_realization(ctx, sym(Family::Olam, n));
      for (long k = 1; k <= n / 2; ++k) {
        const Rat w = rat_binom(n, k) * (Rat(1) - Rat(2 * k, n)) * lam.pow(k);
        if (n != 2 * k) acc += w * *laurent_realization(ctx, sym(Family::Olam, n - 2 * k));
      }
      return acc;
    };
    const std::vector<Exclusion> skip_zero = {
        [](const ParamValues& vals) { return vals.at("lambda").is_zero(); }};
    CHECK(identity_test(lhs, rhs, {{"lambda", n + 1}}, 20260822u + n, skip_zero));
  }
}

TEST_CASE("hatted families restrict from the L/M picture") {
  const auto to_lm = [](const AlgElem& x) {
    AlgElem out;
    for (const auto& [s, c] : x.terms()) {
      switch (s.family) {
        case Family::O:
          alg_insert(kBms, out, Family::L, s.index, c);
          alg_insert(kBms, out, Family::L, -s.index, -c);
          break;
        case Family::Ohat:
          alg_insert(kBms, out, Family::L, s.index, c);
          alg_insert(kBms, out, Family::L, -s.index, c);
          break;
        case Family::P:
          alg_insert(kBms, out, Family::M, s.index, c);
          alg_insert(kBms, out, Family::M, -s.index, c);
          break;
        case Family::Phat:
          alg_insert(kBms, out, Family::M, s.index, c);
          alg_insert(kBms, out, Family::M, -s.index, -c);
          break;
        case Family::C_M:
          alg_insert(kBms, out, Family::C_M, 0, c);
          break;
        default:
          throw InternalError("unexpected family in hatted element");
      }
    }
    return out;
  };

  std::vector<BasisSymbol> basis;
  for (long n = 1; n <= 8; ++n) basis.push_back(sym(Family::O, n));
  for (long n = 0; n <= 8; ++n) basis.push_back(sym(Family::Ohat, n));
  for (long n = 0; n <= 8; ++n) basis.push_back(sym(Family::P, n));
  for (long n = 1; n <= 8; ++n) basis.push_back(sym(Family::Phat, n));
  basis.push_back(sym(Family::C_M));

  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      const BasisSymbol a = basis[i];
      const BasisSymbol b = basis[j];
      const bool bad_diag =
          ((a.family == Family::O && b.family == Family::Ohat) ||
           (a.family == Family::Ohat && b.family == Family::O)) &&
          a.index == b.index;
      const AlgElem xa = alg_sym(kBccaHat, a.family, a.index);
      const AlgElem xb = alg_sym(kBccaHat, b.family, b.index);
      if (bad_diag) {
        CHECK_THROWS_AS(bracket(kBccaHat, xa, xb), DomainError);
        continue;
      }
      CHECK(to_lm(bracket(kBccaHat, xa, xb)) == bracket(kBms, to_lm(xa), to_lm(xb)));
    }
  }
}

TEST_CASE("element text form round trips") {
  std::mt19937_64 rng(20260822u);
  const std::vector<AlgebraId> algebras = {kWitt, kVir, kBms, kBcca, kBccaHat,
                                           kBuv, kBUV, olam(Rat(7, 2))};
  for (const auto& alg : algebras) {
    const auto basis = basis_window(alg, 9);
    for (int trial = 0; trial < 25; ++trial) {
      AlgElem e;
      std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
      std::uniform_int_distribution<long> num(-20, 20);
      std::uniform_int_distribution<long> den(1, 6);
      const int nterms = 1 + static_cast<int>(rng() % 4);
      for (int k = 0; k < nterms; ++k) {
        const auto& s = basis[pick(rng)];
        e += Rat(num(rng), den(rng)) * alg_sym(alg, s.family, s.index);
      }
      CHECK(alg_parse(alg, e.str()) == e);
    }
  }
}
