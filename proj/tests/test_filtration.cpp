#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "bcca/appendix.hpp"
#include "bcca/filtration.hpp"
#include "bcca/identity.hpp"

using namespace bcca;

namespace {

const AlgebraId kBUV{AlgName::b_UV, {}};
const AlgebraId kWitt{AlgName::witt, {}};

// Membership in the n-th filtration piece: every basis index >= n.
bool in_level(const AlgElem& x, long n) {
  for (const auto& [s, c] : x.terms()) {
    (void)c;
    if (s.index < n) return false;
  }
  return true;
}

std::string gens_str(const std::vector<AlgElem>& gens) {
  std::string out;
  for (const auto& g : gens) {
    if (!out.empty()) out += ", ";
    out += g.str();
  }
  return out;
}

LaurentPoly witt_realize(const AlgElem& x) {
  LaurentPoly acc;
  for (const auto& [s, c] : x.terms()) acc += c * *laurent_realization(kWitt, s);
  return acc;
}

}  // namespace

TEST_CASE("filtration generators enumerate in index order") {
  CHECK(gens_str(filtration_gens(FiltrationScope::O, 0, 3)) == "1*U:0, 1*U:1, 1*U:2");
  CHECK(gens_str(filtration_gens(FiltrationScope::bcca_uv, -1, 4)) ==
        "1*U:-1, 1*V:-1, 1*U:0, 1*V:0");
  CHECK(filtration_scope_parse("O") == FiltrationScope::O);
  CHECK(filtration_scope_parse("bcca_uv") == FiltrationScope::bcca_uv);
  CHECK_THROWS_AS(filtration_scope_parse("b"), DomainError);
  CHECK_THROWS_AS(filtration_gens(FiltrationScope::O, -2, 3), DomainError);
  CHECK_THROWS_AS(filtration_gens(FiltrationScope::O, 0, 0), DomainError);

  SUBCASE("a pinned bracket closure value") {
    const AlgElem b = bracket(kBUV, alg_sym(kBUV, Family::U, 1), alg_sym(kBUV, Family::U, 2));
    CHECK(b.str() == "-1*U:5 + 4*U:3");
    CHECK(in_level(b, 3));
  }
}

TEST_CASE("brackets respect the filtration") {
  SUBCASE("[F_n, F_m] lies in F_{n+m}") {
    for (long n = -1; n <= 12; ++n) {
      for (long m = n; m <= 12; ++m) {
        const AlgElem uu = bracket(kBUV, alg_sym(kBUV, Family::U, n), alg_sym(kBUV, Family::U, m));
        const AlgElem uv = bracket(kBUV, alg_sym(kBUV, Family::U, n), alg_sym(kBUV, Family::V, m));
        const AlgElem vu = bracket(kBUV, alg_sym(kBUV, Family::V, n), alg_sym(kBUV, Family::U, m));
        CHECK(in_level(uu, n + m));
        CHECK(in_level(uv, n + m));
        CHECK(in_level(vu, n + m));
        CHECK(bracket(kBUV, alg_sym(kBUV, Family::V, n), alg_sym(kBUV, Family::V, m)).is_zero());
      }
    }
  }

  SUBCASE("associated graded brackets, as membership one level up") {
    for (long n = -1; n <= 10; ++n) {
      for (long m = -1; m <= 10; ++m) {
        AlgElem uu = bracket(kBUV, alg_sym(kBUV, Family::U, n), alg_sym(kBUV, Family::U, m));
        AlgElem uv = bracket(kBUV, alg_sym(kBUV, Family::U, n), alg_sym(kBUV, Family::V, m));
        if (n != m) uu += Rat(4 * (n - m)) * alg_sym(kBUV, Family::U, n + m);
        if (n != m) uv += Rat(4 * (n - m)) * alg_sym(kBUV, Family::V, n + m);
        CHECK(in_level(uu, n + m + 1));
        CHECK(in_level(uv, n + m + 1));
      }
    }
  }

  SUBCASE("the V tail of the derived subalgebra is reached explicitly") {
    for (long m = -1; m <= 10; ++m) {
      CHECK(bracket(kBUV, alg_sym(kBUV, Family::U, m), alg_sym(kBUV, Family::V, m + 1)) ==
            Rat(4) * alg_sym(kBUV, Family::V, 2 * m + 1));
      CHECK(bracket(kBUV, alg_sym(kBUV, Family::U, m), alg_sym(kBUV, Family::V, m)) ==
            alg_sym(kBUV, Family::V, 2 * m + 2));
    }
  }
}

TEST_CASE("abelianization dimensions") {
  CHECK(abelianization_dim(FiltrationScope::O, 0, 12) == 3);
  CHECK(abelianization_dim(FiltrationScope::bcca_uv, 2, 16) == 8);
  CHECK(abelianization_dim(FiltrationScope::O, -1, 12) == 2);

  SUBCASE("closed forms n + 3 and 2n + 4 across levels") {
    for (long n = -1; n <= 6; ++n) {
      CHECK(abelianization_dim(FiltrationScope::O, n, 2 * n + 8) == n + 3);
      CHECK(abelianization_dim(FiltrationScope::bcca_uv, n, 2 * n + 8) == 2 * n + 4);
    }
  }

  SUBCASE("window validation") {
    CHECK_THROWS_AS(abelianization_dim(FiltrationScope::O, 0, 5), DomainError);
    CHECK_THROWS_AS(abelianization_dim(FiltrationScope::O, -2, 12), DomainError);
  }

  SUBCASE("nonzero abelianization witnesses non-perfectness") {
    CHECK(abelianization_dim(FiltrationScope::O, -1, 14) == 2);
  }
}

TEST_CASE("two-generator probe of the full Witt algebra") {
  SUBCASE("generic parameter pairs reach every index near zero") {
    for (const auto& [lam, mu] : std::vector<std::pair<Rat, Rat>>{
             {Rat(1), Rat(2)}, {Rat(2), Rat(1)}, {Rat(3), Rat(5)}}) {
      const auto probe = appendix_probe(lam, mu, 8, 6);
      CHECK_FALSE(probe.singular);
      CHECK(probe.closed_forms_ok);
      for (long n = -3; n <= 3; ++n) CHECK(probe.generated.count(n) == 1);
    }
  }

  SUBCASE("mu = lambda^2 confines the closure to the O-type span") {
    const auto probe = appendix_probe(Rat(1), Rat(1), 8, 6);
    CHECK(probe.singular);
    CHECK_FALSE(probe.family.has_value());
    CHECK(probe.generated.empty());
    const auto probe2 = appendix_probe(Rat(2), Rat(4), 8, 6);
    CHECK(probe2.singular);
    CHECK(probe2.generated.empty());
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(appendix_probe(Rat(0), Rat(1), 8, 6), DomainError);
    CHECK_THROWS_AS(appendix_probe(Rat(1), Rat(0), 8, 6), DomainError);
    CHECK_THROWS_AS(appendix_probe(Rat(1), Rat(2), 0, 6), DomainError);
    CHECK_THROWS_AS(build_appendix_family(Rat(2), Rat(4)), DomainError);
  }
}

TEST_CASE("closed forms of the probe family hold identically in the parameters") {
  const std::vector<Exclusion> off_locus = {
      [](const ParamValues& v) { return v.at("lambda").is_zero(); },
      [](const ParamValues& v) { return v.at("mu").is_zero(); },
      [](const ParamValues& v) {
        return v.at("mu") == v.at("lambda") * v.at("lambda");
      }};
  // Each side is scaled by the smallest factor clearing the construction's
  // denominators (lambda (lambda^2 - mu) for ym1, lambda^2 - mu for z), so
  // the difference is polynomial in (lambda, mu) with degree <= 4 per
  // parameter and the sampling grid is a sound certificate.
  const auto scaled = [](const ParamValues& v, const AlgElem& x, bool with_lambda) {
    const Rat lam = v.at("lambda");
    const Rat mu = v.at("mu");
    const Rat factor = lam * lam - mu;
    return witt_realize((with_lambda ? lam * factor : factor) * x);
  };

  SUBCASE("the degree minus-one corrector") {
    const ParamExpr lhs = [&](const ParamValues& v) {
      return scaled(v, build_appendix_family(v.at("lambda"), v.at("mu")).ym1, true);
    };
    const ParamExpr rhs = [&](const ParamValues& v) {
      const Rat lam = v.at("lambda");
      const Rat mu = v.at("mu");
      AlgElem closed;
      alg_insert(kWitt, closed, Family::L, -1, Rat(1));
      alg_insert(kWitt, closed, Family::L, -3, Rat(3) * mu / (Rat(16) * lam));
      alg_insert(kWitt, closed, Family::L, -5, mu * Rat(1, 16));
      return scaled(v, closed, true);
    };
    CHECK(identity_test(lhs, rhs, {{"lambda", 4}, {"mu", 4}}, 414213u, off_locus));
  }

  SUBCASE("the degree-zero generator") {
    const ParamExpr lhs = [&](const ParamValues& v) {
      return scaled(v, build_appendix_family(v.at("lambda"), v.at("mu")).z, false);
    };
    const ParamExpr rhs = [&](const ParamValues& v) {
      const Rat lam = v.at("lambda");
      const Rat mu = v.at("mu");
      AlgElem closed;
      alg_insert(kWitt, closed, Family::L, 0, Rat(2) * lam);
      alg_insert(kWitt, closed, Family::L, -2, Rat(3, 4) * mu);
      alg_insert(kWitt, closed, Family::L, -6, -(lam * lam * mu * Rat(1, 4)));
      return scaled(v, closed, false);
    };
    CHECK(identity_test(lhs, rhs, {{"lambda", 4}, {"mu", 4}}, 732050u, off_locus));
  }

  SUBCASE("the two degree-five elements differ") {
    const ParamExpr lhs = [&](const ParamValues& v) {
      return witt_realize(build_appendix_family(v.at("lambda"), v.at("mu")).x5);
    };
    const ParamExpr rhs = [&](const ParamValues& v) {
      return witt_realize(build_appendix_family(v.at("lambda"), v.at("mu")).y5);
    };
    CHECK_FALSE(identity_test(lhs, rhs, {{"lambda", 4}, {"mu", 4}}, 236067u, off_locus));
  }
}
